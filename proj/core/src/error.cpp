#include "swipt/error.hpp"

#include <sstream>

namespace swipt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidGeometry: return "InvalidGeometry";
    case ErrorCode::kInfeasibleEHRequirement: return "InfeasibleEHRequirement";
    case ErrorCode::kDegenerateEHGeometry: return "DegenerateEHGeometry";
    case ErrorCode::kAtbNotConverged: return "AtbNotConverged";
    case ErrorCode::kPrbNotConverged: return "PrbNotConverged";
    case ErrorCode::kEHUnreachableByPhase: return "EHUnreachableByPhase";
    case ErrorCode::kEHUnreachableByBeamforming: return "EHUnreachableByBeamforming";
    case ErrorCode::kMonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

SolverError::SolverError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {
std::string infeasible_message(int psr, double deficit) {
  std::ostringstream os;
  os << "PSR " << psr << " needs " << deficit << " W more received power at rho = 0";
  return os.str();
}
}  // namespace

InfeasibleEHError::InfeasibleEHError(int psr, double deficit_watts)
    : SolverError(ErrorCode::kInfeasibleEHRequirement, infeasible_message(psr, deficit_watts)),
      psr_(psr),
      deficit_(deficit_watts) {}

}  // namespace swipt
