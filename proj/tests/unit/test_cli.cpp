#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "cli.hpp"

using namespace mk::cli;

namespace {

Json parse_output(const Outcome& o) { return Json::parse(o.output); }

Json without_time(Json j) {
  j.erase("wall_time_s");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("command names round-trip") {
  CHECK(all_commands().size() == 11);
  for (Command c : all_commands()) CHECK(parse_command(to_string(c)) == c);
  CHECK_FALSE(parse_command("frobnicate").has_value());
}

TEST_CASE("defaults are filled in and overrides are echoed") {
  const auto spec = parse_spec(R"({"command": "maslov-index", "params": {"n": 3}, "tolerances": {"unitarity": 1e-7}})");
  CHECK(spec.command == Command::MaslovIndex);
  CHECK(spec.params.at("n") == 3);
  CHECK(spec.params.contains("samples"));
  CHECK(spec.tolerances.at("unitarity") == 1e-7);
  const auto o = run(R"({"command": "maslov-index", "params": {"n": 3}, "tolerances": {"unitarity": 1e-7}})");
  CHECK(o.exit_code == 0);
  CHECK(parse_output(o)["inputs"]["tolerances"]["unitarity"] == 1e-7);
}

TEST_CASE("schema errors carry a location and exit with 2") {
  try {
    parse_spec("{\n  \"command\": maslov}");
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
  }
  CHECK(run("{\n  \"command\": maslov}").exit_code == 2);
  CHECK(run(R"({"command": "nope"})").exit_code == 2);
  CHECK(run(R"({"command": "maslov-index", "extra": 1})").exit_code == 2);
  CHECK(run(R"({"command": "maslov-index", "params": {"bogus": 1}})").exit_code == 2);
  CHECK(run(R"({"command": "maslov-index", "params": {"n": "two"}})").exit_code == 2);
  CHECK(run(R"({"command": "maslov-index", "params": {"samples": 3}})").exit_code == 2);
  CHECK(run(R"({"command": "maslov-index", "tolerances": {"nonsense": 1}})").exit_code == 2);
  CHECK(run(R"({"command": "wks-classify", "params": {"k": 2, "l": 4}})").exit_code == 2);
  CHECK(run(R"([1, 2])").exit_code == 2);
}

TEST_CASE("assertion failures exit with 1") {
  const auto o = run(R"({"command": "maslov-index", "params": {"n": 2, "expected": 5}})");
  CHECK(o.exit_code == 1);
  CHECK(o.diagnostic.find("index_equals_expected") != std::string::npos);
  CHECK_FALSE(parse_output(o)["pass"].get<bool>());
}

TEST_CASE("numerical failures exit with 3") {
  // samples of the canonical n = 1 loop at t = 0, pi/3, 2pi/3, pi: too coarse to unwrap
  std::string frames = "[";
  for (int s = 0; s <= 3; ++s) {
    const double t = std::numbers::pi * s / 3.0;
    frames += (s ? "," : "") + std::string("[[[") + std::to_string(std::cos(t)) + "," + std::to_string(std::sin(t)) + "]]]";
  }
  frames += "]";
  const auto o = run(R"({"command": "maslov-index", "params": {"frames": )" + frames + R"(}, "tolerances": {"unitarity": 1e-5}})");
  CHECK(o.exit_code == 3);
  const auto j = parse_output(o);
  CHECK(j["error"]["code"] == "sampling too coarse");
}

TEST_CASE("every command runs with its defaults and reports under its own name") {
  std::set<std::string> reports;
  for (Command c : all_commands()) {
    const auto o = run(R"({"command": ")" + to_string(c) + R"("})");
    CAPTURE(to_string(c));
    CAPTURE(o.diagnostic);
    CHECK(o.exit_code == 0);
    const auto j = parse_output(o);
    CHECK(j["pass"].get<bool>());
    reports.insert(j["results"]["report"].get<std::string>());
  }
  CHECK(reports.size() == all_commands().size());
}

TEST_CASE("spot checks of command results") {
  auto j = parse_output(run(R"({"command": "maslov-index", "params": {"n": 2}})"));
  CHECK(j["results"]["index"] == 1);
  j = parse_output(run(R"({"command": "table-verify"})"));
  CHECK(j["results"]["admissible_rows"] == 28);
  j = parse_output(run(R"({"command": "wks-classify", "params": {"k": 897, "l": 4}})"));
  CHECK(j["results"]["diffeomorphic_to_M_1_4"] == true);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const std::string s = R"({"command": "involution", "seed": 7, "params": {"states": 5}})";
  const auto a = parse_output(run(s)), b = parse_output(run(s));
  CHECK(without_time(a) == without_time(b));
  const auto c = parse_output(run(s, 8));
  CHECK(c["inputs"]["seed"] == 8);
}

TEST_CASE("csv output") {
  const auto o = run(R"({"command": "esch-enumerate", "params": {"lo": -1, "hi": 1}})", std::nullopt, Format::Csv);
  CHECK(o.exit_code == 0);
  CHECK(o.output.rfind("k,l,p,q", 0) == 0);
  const auto a = run(R"({"command": "maslov-index"})", std::nullopt, Format::Csv);
  CHECK(a.output.find("crossings_equal_index") != std::string::npos);
}

TEST_CASE("exported frames import back to the same index") {
  const auto e = parse_output(run(R"({"command": "maslov-index", "params": {"n": 2, "repeat": 2, "samples": 16, "export": true}})"));
  REQUIRE(e["results"]["index"] == 2);
  Json spec = {{"command", "maslov-index"}, {"params", {{"frames", e["results"]["frames"]}, {"expected", 2}}}};
  const auto o = run(spec.dump());
  CHECK(o.exit_code == 0);
  CHECK(parse_output(o)["results"]["source"] == "frames");
}

TEST_CASE("the installed tool maps outcomes to exit codes") {
  const std::string tool = MASLOVKIT_TOOL;
  const std::string good = "cli_good_spec.json", bad = "cli_bad_spec.json", out = "cli_report.json";
  std::ofstream(good) << R"({"command": "wks-classify", "params": {"k": 1, "l": 4}})";
  std::ofstream(bad) << R"({"command": "wks-classify", "params": {"k": 2, "l": 4}})";
  auto status = [](const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
  };
  CHECK(status(tool + " --spec " + good + " --out " + out + " 2>/dev/null") == 0);
  const auto report = Json::parse(slurp(out));
  CHECK(report["command"] == "wks-classify");
  CHECK(status(tool + " --spec " + bad + " > /dev/null 2>&1") == 2);
  CHECK(status(tool + " --spec missing.json > /dev/null 2>&1") == 2);
  CHECK(status(tool + " --spec " + good + " --format xml > /dev/null 2>&1") == 2);
  CHECK(status("echo '{\"command\": \"table-verify\"}' | " + tool + " --spec - > /dev/null") == 0);
  std::remove(good.c_str());
  std::remove(bad.c_str());
  std::remove(out.c_str());
}
