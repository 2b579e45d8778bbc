#include "mixsynth/error.hpp"

namespace mixsynth {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::ConvergenceFailure: return "CONVERGENCE_FAILURE";
    case ErrorCode::BranchAmbiguity: return "BRANCH_AMBIGUITY";
    case ErrorCode::SolverStall: return "SOLVER_STALL";
    case ErrorCode::NumericalStall: return "NUMERICAL_STALL";
    case ErrorCode::MaxIterExceeded: return "MAX_ITER_EXCEEDED";
    case ErrorCode::BudgetTooLarge: return "BUDGET_TOO_LARGE";
    case ErrorCode::UnreachablePrecision: return "UNREACHABLE_PRECISION";
    case ErrorCode::ZNotFree: return "Z_NOT_FREE";
    case ErrorCode::NoOppositeRotation: return "NO_OPPOSITE_ROTATION";
    case ErrorCode::PhaseDegenerate: return "PHASE_DEGENERATE";
    case ErrorCode::HypothesisViolated: return "HYPOTHESIS_VIOLATED";
    case ErrorCode::InvalidState: return "INVALID_STATE";
    case ErrorCode::OutOfRegime: return "OUT_OF_REGIME";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace mixsynth
