#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swipt {

enum class ErrorCode {
  kNotPositiveDefinite,
  kDimensionMismatch,
  kInvalidGeometry,
  kInfeasibleEHRequirement,
  kDegenerateEHGeometry,
  kAtbNotConverged,
  kPrbNotConverged,
  kEHUnreachableByPhase,
  kEHUnreachableByBeamforming,
  kMonotonicityViolation,
  kConfigError,
};

std::string_view to_string(ErrorCode code);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a PSR cannot meet its harvesting floor even with rho -> 0.
class InfeasibleEHError : public SolverError {
 public:
  InfeasibleEHError(int psr, double deficit_watts);
  int psr() const noexcept { return psr_; }
  // Additional received power (W) the PSR would need at rho = 0.
  double deficit() const noexcept { return deficit_; }

 private:
  int psr_;
  double deficit_;
};

class ConfigError : public SolverError {
 public:
  explicit ConfigError(const std::string& message)
      : SolverError(ErrorCode::kConfigError, message) {}
};

}  // namespace swipt
