#pragma once

#include <vector>

#include "swipt/system_model.hpp"

namespace swipt {

// U_k, the Hermitian SINR form (maximizer of f3 in U when L is optimal).
std::vector<ComplexMatrix> update_u(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config);

// Largest PS ratio meeting each harvesting floor, clamped to
// [rho_floor, 1 - rho_floor]. Throws InfeasibleEHError when even rho = 0
// would not harvest enough.
std::vector<double> update_rho(const Solution& solution, const ChannelSet& channels,
                               const SystemConfig& config);

// L_k = V_k^-1 H_k^H W_k.
std::vector<ComplexMatrix> update_l(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config);

// I + L^H R L - L^H H^H W_k - W_k^H H L + (sigma2 + delta2 / rho) L^H L
ComplexMatrix mse_matrix(const ComplexMatrix& l, const Solution& solution,
                         const ChannelSet& channels, const SystemConfig& config, int k);

// U and L at their closed forms for the given solution.
AuxiliaryState closed_form_auxiliaries(const Solution& solution, const ChannelSet& channels,
                                       const SystemConfig& config);

}  // namespace swipt
