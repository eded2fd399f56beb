#pragma once

#include <vector>

#include "swipt/system_model.hpp"

namespace swipt {

// Phase-vector quadratic program with objective (to be minimized)
//   f7(theta) = theta^H Omega theta + 2 Re theta^H c*
// and harvesting constraints
//   theta^H Jbar_k theta + 2 Re theta^H lambda_k* >= e_dddot_k.
struct PrbState {
  ComplexVector theta;
  std::vector<double> chi;
  ComplexMatrix omega;
  ComplexVector c;
  std::vector<ComplexMatrix> j_bar;
  std::vector<ComplexVector> lambda;
  std::vector<double> e_dddot;
  std::vector<double> e_hat;
  double omega_max = 0.0;
  double alpha = 1.0;
  // Tr(D_k^H What D_k): received power through the direct path only.
  std::vector<double> direct_power;
};

// theta is copied from the solution, chi starts at zero.
PrbState assemble_qp(const Solution& solution, const AuxiliaryState& aux,
                     const ChannelSet& channels, const SystemConfig& config);

double f7_objective(const PrbState& state, const ComplexVector& theta);

// Left side of the k-th harvesting constraint (quadratic form).
double eh_quadratic(const PrbState& state, int k, const ComplexVector& theta);

struct EhThetaLinearization {
  std::vector<ComplexVector> g;  // lambda_k* + Jbar_k theta_prev
  std::vector<double> e_hat;     // e_dddot_k + theta_prev^H Jbar_k theta_prev
};

EhThetaLinearization linearize_eh_theta(const PrbState& state, const ComplexVector& theta_prev);

// r = (omega_max I - Omega) theta_prev - c*
ComplexVector mm_surrogate_vector(const PrbState& state, const ComplexVector& theta_prev);

// Majorizer of f7 on the modulus sphere, tight at theta_prev.
double surrogate_value(const PrbState& state, const ComplexVector& theta,
                       const ComplexVector& theta_prev);

// theta_n = alpha exp(j arg f_n); keeps the previous phase where f_n = 0.
ComplexVector update_theta(const ComplexVector& f, const ComplexVector& theta_prev, double alpha);

// chi_k <- max(0, chi_k + step_k (e_hat_k - 2 Re theta^H g_k)).
std::vector<double> update_penalty(const std::vector<double>& chi,
                                   const EhThetaLinearization& lin, const ComplexVector& theta,
                                   const std::vector<double>& step);

enum class PenaltyRule {
  kSubgradient,   // one scaled diminishing step per iteration
  kDualBisection  // exact coordinate minimization of the penalty dual
};

struct PrbOptions {
  PenaltyRule penalty_rule = PenaltyRule::kSubgradient;
  // Relative tolerance on received power for accepting an iterate.
  double eh_tolerance = 1e-9;
};

struct PrbResult {
  ComplexVector theta;
  int iterations = 0;
  bool converged = false;
  // False when neither the start point nor any iterate met the harvesting
  // constraints; theta is then the start point.
  bool eh_satisfied = true;
  std::vector<double> objective_trace;  // f7 of every iterate, starting point first
  std::vector<double> chi;
  double omega_max = 0.0;
};

PrbResult run_prb(const Solution& solution, const AuxiliaryState& aux, const ChannelSet& channels,
                  const SystemConfig& config, const PrbOptions& options = {});

}  // namespace swipt
