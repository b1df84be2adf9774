#pragma once

#include <stdexcept>
#include <string>

namespace mk {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  NonUnitaryFrame,
  SamplingTooCoarse,
  OpenLoop,
  DegenerateCrossing,
  ResampleRequired,
  NonFinite,
  OffManifold,
  ConstraintDegeneracy,
  EnergyDrift,
  ConsistencyFailure,
  SingularParameter,
  RankDeficient,
  NoRealSolution,
  SearchExhausted,
  NotCoprime,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures that come from numerical degeneracy rather than bad input.
  bool is_numerical() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace mk
