#pragma once

// JSON-driven front end: one RunSpec in, one RunReport out.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mk::cli {

using Json = nlohmann::ordered_json;

enum class Command {
  MaslovIndex,
  Involution,
  Independence,
  Flow,
  ProjTori,
  ImageOfJ,
  WksVerify,
  EschenburgVerify,
  EschEnumerate,
  WksClassify,
  TableVerify,
};

const std::vector<Command>& all_commands();
std::string to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Schema or parse failure. line/column are 1-based and 0 when not applicable.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct RunSpec {
  Command command = Command::TableVerify;
  Json params = Json::object();  // defaults filled in
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;  // effective values, defaults merged
};

/// Parses and validates. Unknown keys, wrong types and unknown tolerance names are
/// SpecErrors.
RunSpec parse_spec(const std::string& text);
/// `path` of "-" reads standard input.
RunSpec load_spec(const std::string& path);

struct Assertion {
  std::string name;
  bool pass = false;
  Json value;
  Json bound;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct RunReport {
  Command command = Command::TableVerify;
  Json inputs;
  Json results = Json::object();
  std::vector<Assertion> assertions;
  std::optional<Table> table;
  double wall_time_s = 0.0;

  bool pass() const;
  Json to_json(bool with_time = true) const;
  /// The tabular result when the command has one, otherwise the assertion list.
  std::string to_csv() const;
};

/// Throws mk::Error from the modules and SpecError for parameters that only fail
/// validation once they are interpreted.
RunReport execute(const RunSpec& spec);

enum class Format { Json, Csv };

struct Outcome {
  int exit_code = 0;
  std::string output;      // report text (empty on exit 2)
  std::string diagnostic;  // for standard error
};

/// Whole pipeline with exit-code mapping: 0 pass, 1 failed assertion, 2 schema or
/// precondition error, 3 numerical error.
Outcome run(const std::string& spec_text, std::optional<std::uint64_t> seed_override = std::nullopt,
            Format format = Format::Json);

}  // namespace mk::cli
