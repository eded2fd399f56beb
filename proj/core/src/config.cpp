#include "swipt/config.hpp"

#include <cmath>
#include <sstream>

#include "swipt/error.hpp"

namespace swipt {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

void SystemConfig::broadcast_per_psr() {
  auto fit = [this](std::vector<double>& v) {
    if (v.empty() || static_cast<int>(v.size()) == k) return;
    if (v.size() == 1) v.assign(k, v.front());
  };
  fit(e_min);
  fit(eta);
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& message) { throw ConfigError(message); };
  if (m_b < 1) fail("m_b must be at least 1");
  if (m_u < 1) fail("m_u must be at least 1");
  if (k < 1) fail("k must be at least 1");
  if (n < 0) fail("n must be non-negative");
  if (!(p_max > 0.0)) fail("p_max must be positive");
  if (!(sigma2 >= 0.0)) fail("sigma2 must be non-negative");
  if (!(delta2 > 0.0)) fail("delta2 must be positive");
  if (static_cast<int>(e_min.size()) != k) fail("e_min must have k entries");
  if (static_cast<int>(eta.size()) != k) fail("eta must have k entries");
  for (double e : e_min) {
    if (!(e > 0.0)) fail("e_min must be positive");
  }
  for (double e : eta) {
    if (!(e > 0.0 && e < 1.0)) fail("eta must lie in (0,1)");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must lie in (0,1]");
  if (!(d0 > 0.0)) fail("d0 must be positive");
  if (!(spacing_over_lambda > 0.0)) fail("spacing_over_lambda must be positive");
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(eps3 > 0.0)) fail("thresholds must be positive");
  if (!(rho_floor > 0.0 && rho_floor < 0.5)) fail("rho_floor must lie in (0,0.5)");
  if (n_max < 1 || q_max < 1 || t_max < 1) fail("iteration caps must be at least 1");
  for (double v : {p_max, sigma2, delta2, rician_beta_db, chi_direct, chi_relate, c0_db}) {
    if (!std::isfinite(v)) fail("configuration values must be finite");
  }
}

}  // namespace swipt
