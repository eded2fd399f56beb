#pragma once

#include <vector>

#include "swipt/channel.hpp"
#include "swipt/config.hpp"
#include "swipt/linalg.hpp"

namespace swipt {

struct Solution {
  std::vector<ComplexMatrix> w;  // K of M_b x M_u
  ComplexVector theta;           // length N, |theta_n| = alpha
  std::vector<double> rho;       // K, in (0, 1)
};

struct AuxiliaryState {
  std::vector<ComplexMatrix> u;  // K of M_u x M_u, Hermitian PSD
  std::vector<ComplexMatrix> l;  // K of M_u x M_u
};

// Quantities at one receiver for fixed (W, theta, rho).
struct ReceiverTerms {
  ComplexMatrix h;         // effective channel H_k, M_b x M_u
  ComplexMatrix signal;    // H_k^H W_k
  ComplexMatrix interference;  // H_k^H (sum_{i != k} W_i W_i^H) H_k
  ComplexMatrix received;      // interference + signal signal^H
  double noise = 0.0;      // sigma2 + delta2 / rho_k

  // Interference plus scaled noise, the denominator of the SINR.
  ComplexMatrix interference_plus_noise() const;
  // Signal plus interference plus noise.
  ComplexMatrix total_covariance() const;
};

ComplexMatrix effective_channel(const ChannelSet& channels, const ComplexVector& theta, int k);

ComplexMatrix transmit_covariance(const std::vector<ComplexMatrix>& w);

double transmit_power(const std::vector<ComplexMatrix>& w);

ReceiverTerms receiver_terms(const Solution& solution, const ChannelSet& channels,
                             const SystemConfig& config, int k);

// SINR matrix in the product form rho H^H W W^H H (rho I_k + rho s2 I + d2 I)^-1.
// Not Hermitian in general.
ComplexMatrix sinr_matrix(const Solution& solution, const ChannelSet& channels,
                          const SystemConfig& config, int k);

// Similar Hermitian form W^H H N^-1 H^H W sharing eigenvalues with sinr_matrix.
ComplexMatrix sinr_matrix_hermitian(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config, int k);

double harvested_energy(const Solution& solution, const ChannelSet& channels,
                        const SystemConfig& config, int k);

// In config.log_base units.
double sum_rate(const Solution& solution, const ChannelSet& channels, const SystemConfig& config);

double user_rate(const Solution& solution, const ChannelSet& channels, const SystemConfig& config,
                 int k);

// Transformed objective in config.log_base units; equals sum_rate at the
// closed-form auxiliaries.
double f3_objective(const Solution& solution, const AuxiliaryState& aux,
                    const ChannelSet& channels, const SystemConfig& config);

struct FeasibilityReport {
  double power_slack = 0.0;           // p_max - sum ||W_k||^2, W
  std::vector<double> eh_slack;       // e_k - e_min_k, W
  std::vector<double> modulus_slack;  // -| |theta_n| - alpha |
  std::vector<double> rho_lower_slack;
  std::vector<double> rho_upper_slack;

  double min_eh_slack() const;
  // Uses the acceptance tolerances: power 1e-8 p_max, EH 1e-6 e_min,
  // modulus 1e-10, open interval for rho.
  bool feasible(const SystemConfig& config) const;
};

FeasibilityReport check_feasibility(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config);

void check_dimensions(const Solution& solution, const ChannelSet& channels);

}  // namespace swipt
