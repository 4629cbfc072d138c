#pragma once

#include <stdexcept>
#include <string>

namespace ringmod {

// Failure categories, mapped onto process exit codes by the CLI:
//   2 = invalid input, 3 = numerical failure, 4 = hypothesis violated.
enum class ErrorKind {
  InvalidInput,
  UnsupportedGeometry,
  DegenerateDomain,
  Undersampled,
  ResolutionTooCoarse,
  SolverFailure,
  BracketFailure,
  OptimizerFailure,
  ConstructionFailed,
  PathThroughSingularity,
  HypothesisViolated,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::UnsupportedGeometry:
    case ErrorKind::DegenerateDomain:
    case ErrorKind::Undersampled:
      return 2;
    case ErrorKind::HypothesisViolated:
      return 4;
    default:
      return 3;
  }
}

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::UnsupportedGeometry: return "unsupported-geometry";
    case ErrorKind::DegenerateDomain: return "degenerate-domain";
    case ErrorKind::Undersampled: return "undersampled";
    case ErrorKind::ResolutionTooCoarse: return "resolution-too-coarse";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::BracketFailure: return "bracket-failure";
    case ErrorKind::OptimizerFailure: return "optimizer-failure";
    case ErrorKind::ConstructionFailed: return "construction-failed";
    case ErrorKind::PathThroughSingularity: return "path-through-singularity";
    case ErrorKind::HypothesisViolated: return "hypothesis-violated";
  }
  return "unknown";
}

}  // namespace ringmod
