#pragma once

#include <vector>

#include "swipt/system_model.hpp"

namespace swipt {

struct AtbConstants {
  ComplexMatrix a;               // sum_k H_k L_k Ubar_k L_k^H H_k^H
  std::vector<ComplexMatrix> s;  // H_k L_k Ubar_k
  std::vector<ComplexMatrix> b;  // H_k H_k^H
  std::vector<double> e_dot;     // e_min_k / (eta_k (1 - rho_k))
};

AtbConstants assemble_atb_constants(const Solution& solution, const AuxiliaryState& aux,
                                    const ChannelSet& channels, const SystemConfig& config);

// First-order minorant of sum_i Tr(W_i^H B_k W_i) >= e_dot_k around w_prev:
//   2 Re sum_i Tr(G_i^H W_i) >= e_ddot,  G_i = B_k W_i^prev.
struct EhLinearization {
  std::vector<ComplexMatrix> gradient;
  double e_ddot = 0.0;

  double lhs(const std::vector<ComplexMatrix>& w) const;
};

EhLinearization linearize_eh(const std::vector<ComplexMatrix>& w_prev, const ComplexMatrix& b_k,
                             double e_dot_k);

struct AtbState {
  std::vector<ComplexMatrix> w;  // expansion point W^(n)
  std::vector<double> mu;
  double tau = 0.0;
  std::vector<double> e_ddot;
  double objective = 0.0;
};

// sum_k Tr(W_k^H A W_k) - 2 Re sum_k Tr(W_k^H S_k)
double f5_objective(const std::vector<ComplexMatrix>& w, const AtbConstants& constants);

// W_i = (A + tau I)^-1 (S_i + sum_k mu_k B_k W_i^(n)).
std::vector<ComplexMatrix> update_w(const AtbState& state, const AtbConstants& constants);

// EH multipliers at the state's tau: complementarity solution of the
// linearized constraints. Zero whenever a constraint already holds at mu = 0.
std::vector<double> update_mu(const AtbState& state, const AtbConstants& constants);

// Projected subgradient step on the power multiplier.
double update_tau(double tau, const std::vector<ComplexMatrix>& w, double p_max, double step);

struct AtbKkt {
  double stationarity = 0.0;           // relative to the size of the stationarity terms
  double power_complementarity = 0.0;  // |tau (P - power)| / |f5|
  double eh_complementarity = 0.0;     // max_k |mu_k (lhs_k - e_ddot_k)| / |f5|
  double power_violation = 0.0;        // max(0, power - P) / P
  double eh_violation = 0.0;           // max_k max(0, e_ddot_k - lhs_k) / e_ddot_k
};

enum class TauRule {
  kBisection,   // exact dual root per sub-iteration
  kSubgradient  // one diminishing-step subgradient update per sub-iteration
};

struct AtbOptions {
  TauRule tau_rule = TauRule::kBisection;
};

struct AtbResult {
  std::vector<ComplexMatrix> w;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // f5 at W^(0), W^(1), ...
  double tau = 0.0;
  std::vector<double> mu;
  AtbKkt kkt;  // of the last sub-problem
};

AtbResult run_atb(const Solution& solution, const AuxiliaryState& aux, const ChannelSet& channels,
                  const SystemConfig& config, const AtbOptions& options = {});

}  // namespace swipt
