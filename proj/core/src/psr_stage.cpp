#include "swipt/psr_stage.hpp"

#include <algorithm>

#include "swipt/error.hpp"

namespace swipt {

std::vector<ComplexMatrix> update_u(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config) {
  check_dimensions(solution, channels);
  std::vector<ComplexMatrix> u;
  u.reserve(channels.k());
  for (int k = 0; k < channels.k(); ++k) {
    u.push_back(sinr_matrix_hermitian(solution, channels, config, k));
  }
  return u;
}

std::vector<double> update_rho(const Solution& solution, const ChannelSet& channels,
                               const SystemConfig& config) {
  check_dimensions(solution, channels);
  std::vector<double> rho(channels.k());
  for (int k = 0; k < channels.k(); ++k) {
    const ComplexMatrix h = effective_channel(channels, solution.theta, k);
    double received = 0.0;
    for (const auto& w : solution.w) received += (h.adjoint() * w).squaredNorm();
    const double needed = config.e_min[k] / config.eta[k];
    if (!(received > needed)) throw InfeasibleEHError(k, needed - received);
    const double rho_max = 1.0 - needed / received;
    rho[k] = std::clamp(rho_max, config.rho_floor, 1.0 - config.rho_floor);
  }
  return rho;
}

std::vector<ComplexMatrix> update_l(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config) {
  check_dimensions(solution, channels);
  std::vector<ComplexMatrix> l;
  l.reserve(channels.k());
  for (int k = 0; k < channels.k(); ++k) {
    const ReceiverTerms t = receiver_terms(solution, channels, config, k);
    l.push_back(linalg::solve_hpd(t.total_covariance(), t.signal));
  }
  return l;
}

ComplexMatrix mse_matrix(const ComplexMatrix& l, const Solution& solution,
                         const ChannelSet& channels, const SystemConfig& config, int k) {
  const ReceiverTerms t = receiver_terms(solution, channels, config, k);
  if (l.rows() != t.signal.rows() || l.cols() != t.signal.cols()) {
    throw SolverError(ErrorCode::kDimensionMismatch, "decoder shape does not match M_u x M_u");
  }
  const auto m = l.cols();
  const ComplexMatrix cross = l.adjoint() * t.signal;
  const ComplexMatrix mse = ComplexMatrix::Identity(m, m) + l.adjoint() * t.total_covariance() * l -
                            cross - cross.adjoint();
  return linalg::symmetrize(mse);
}

AuxiliaryState closed_form_auxiliaries(const Solution& solution, const ChannelSet& channels,
                                       const SystemConfig& config) {
  return {update_u(solution, channels, config), update_l(solution, channels, config)};
}

}  // namespace swipt
