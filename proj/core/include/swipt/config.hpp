#pragma once

#include <vector>

#include "swipt/linalg.hpp"

namespace swipt {

struct SystemConfig {
  int m_b = 8;   // AP antennas
  int m_u = 2;   // antennas per PSR
  int k = 4;     // number of PSRs
  int n = 30;    // IRS elements
  double p_max = 10.0;    // W
  double sigma2 = 1e-8;   // W, -50 dBm antenna noise
  double delta2 = 1e-7;   // W, -40 dBm processing noise
  std::vector<double> e_min = std::vector<double>(4, 5e-4);  // W
  std::vector<double> eta = std::vector<double>(4, 0.7);
  double alpha = 1.0;
  double rician_beta_db = 5.0;
  double chi_direct = 3.6;
  double chi_relate = 2.2;
  double c0_db = -30.0;
  double d0 = 1.0;  // m
  double spacing_over_lambda = 0.5;
  double eps1 = 1e-6;
  double eps2 = 1e-6;
  double eps3 = 1e-6;
  LogBase log_base = LogBase::kTwo;
  double rho_floor = 1e-6;
  int n_max = 500;  // ATB sub-iterations
  int q_max = 500;  // PRB sub-iterations
  int t_max = 200;  // outer iterations

  // Throws ConfigError naming the first violated invariant.
  void validate() const;

  // Resizes e_min / eta to k entries, repeating the first value.
  void broadcast_per_psr();
};

double db_to_linear(double db);
double dbm_to_watts(double dbm);

}  // namespace swipt
