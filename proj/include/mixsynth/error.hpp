#pragma once

#include <stdexcept>
#include <string>

namespace mixsynth {

// Every failure mode exposed by the library. The CLI maps each code to a
// distinct nonzero exit status (see tools/mixsynth.cpp and README.md).
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  ConvergenceFailure,
  BranchAmbiguity,
  SolverStall,
  NumericalStall,
  MaxIterExceeded,
  BudgetTooLarge,
  UnreachablePrecision,
  ZNotFree,
  NoOppositeRotation,
  PhaseDegenerate,
  HypothesisViolated,
  InvalidState,
  OutOfRegime,
  ConfigError,
  SchemaError,
};

const char* error_code_name(ErrorCode code);

class MixSynthError : public std::runtime_error {
 public:
  MixSynthError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw MixSynthError(code, message);
}

}  // namespace mixsynth
