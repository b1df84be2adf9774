#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"maslovkit: Maslov indices and integrability checks"};
  std::string spec_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "json";
  app.add_option("--spec", spec_path, "run spec as JSON ('-' for standard input)")->required();
  app.add_option("--seed", seed, "override the spec's seed");
  app.add_option("--out", out_path, "write the report here instead of standard output");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string text;
  if (spec_path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) {
      std::cerr << "spec error: cannot open '" << spec_path << "'\n";
      return 2;
    }
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  const auto fmt = format == "csv" ? mk::cli::Format::Csv : mk::cli::Format::Json;
  const auto outcome = mk::cli::run(text, seed, fmt);
  std::cerr << outcome.diagnostic;
  if (!outcome.output.empty()) {
    if (out_path.empty()) {
      std::cout << outcome.output;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return 2;
      }
      out << outcome.output;
    }
  }
  return outcome.exit_code;
}
