#include "swipt/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "swipt/error.hpp"

namespace swipt {

namespace {

[[noreturn]] void dimension_error(const std::string& what) {
  throw SolverError(ErrorCode::kDimensionMismatch, what);
}

}  // namespace

ComplexMatrix ReceiverTerms::interference_plus_noise() const {
  const auto m = signal.rows();
  return linalg::symmetrize(interference) + noise * ComplexMatrix::Identity(m, m);
}

ComplexMatrix ReceiverTerms::total_covariance() const {
  const auto m = signal.rows();
  return linalg::symmetrize(received) + noise * ComplexMatrix::Identity(m, m);
}

void check_dimensions(const Solution& solution, const ChannelSet& channels) {
  const int k = channels.k();
  if (static_cast<int>(solution.w.size()) != k || static_cast<int>(solution.rho.size()) != k) {
    dimension_error("solution has a different PSR count than the channel set");
  }
  if (solution.theta.size() != channels.n()) {
    std::ostringstream os;
    os << "theta has " << solution.theta.size() << " entries, IRS has " << channels.n();
    dimension_error(os.str());
  }
  for (const auto& w : solution.w) {
    if (w.rows() != channels.m_b() || w.cols() != channels.m_u()) {
      dimension_error("beamformer shape does not match M_b x M_u");
    }
  }
}

ComplexMatrix effective_channel(const ChannelSet& channels, const ComplexVector& theta, int k) {
  if (k < 0 || k >= channels.k()) dimension_error("PSR index out of range");
  const ComplexMatrix& d = channels.d[k];
  const ComplexMatrix& r = channels.r[k];
  if (theta.size() != channels.f.rows() || r.rows() != channels.f.rows()) {
    dimension_error("theta, F and R_k disagree on the IRS size");
  }
  if (theta.size() == 0) return d;
  return d + channels.f.adjoint() * (theta.conjugate().asDiagonal() * r);
}

ComplexMatrix transmit_covariance(const std::vector<ComplexMatrix>& w) {
  if (w.empty()) return {};
  ComplexMatrix cov = ComplexMatrix::Zero(w.front().rows(), w.front().rows());
  for (const auto& wk : w) cov.noalias() += wk * wk.adjoint();
  return cov;
}

double transmit_power(const std::vector<ComplexMatrix>& w) {
  double p = 0.0;
  for (const auto& wk : w) p += wk.squaredNorm();
  return p;
}

ReceiverTerms receiver_terms(const Solution& solution, const ChannelSet& channels,
                             const SystemConfig& config, int k) {
  ReceiverTerms t;
  t.h = effective_channel(channels, solution.theta, k);
  const ComplexMatrix hh = t.h.adjoint();
  const auto m_u = t.h.cols();
  t.interference = ComplexMatrix::Zero(m_u, m_u);
  for (std::size_t i = 0; i < solution.w.size(); ++i) {
    const ComplexMatrix x = hh * solution.w[i];
    if (static_cast<int>(i) == k) {
      t.signal = x;
    } else {
      t.interference.noalias() += x * x.adjoint();
    }
  }
  t.received = t.interference + t.signal * t.signal.adjoint();
  t.noise = config.sigma2 + config.delta2 / solution.rho[k];
  return t;
}

ComplexMatrix sinr_matrix(const Solution& solution, const ChannelSet& channels,
                          const SystemConfig& config, int k) {
  const ReceiverTerms t = receiver_terms(solution, channels, config, k);
  const double rho = solution.rho[k];
  const auto m_u = t.signal.rows();
  const ComplexMatrix denom =
      linalg::symmetrize(rho * t.interference) +
      (rho * config.sigma2 + config.delta2) * ComplexMatrix::Identity(m_u, m_u);
  const ComplexMatrix numer = rho * t.signal * t.signal.adjoint();
  // numer * denom^-1 = (denom^-1 * numer)^H since both are Hermitian.
  return linalg::solve_hpd(denom, numer).adjoint();
}

ComplexMatrix sinr_matrix_hermitian(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config, int k) {
  const ReceiverTerms t = receiver_terms(solution, channels, config, k);
  const ComplexMatrix n = t.interference_plus_noise();
  return linalg::symmetrize(t.signal.adjoint() * linalg::solve_hpd(n, t.signal));
}

double harvested_energy(const Solution& solution, const ChannelSet& channels,
                        const SystemConfig& config, int k) {
  const ComplexMatrix h = effective_channel(channels, solution.theta, k);
  double received = 0.0;
  for (const auto& w : solution.w) received += (h.adjoint() * w).squaredNorm();
  return config.eta[k] * (1.0 - solution.rho[k]) * received;
}

double user_rate(const Solution& solution, const ChannelSet& channels, const SystemConfig& config,
                 int k) {
  const ComplexMatrix g = sinr_matrix_hermitian(solution, channels, config, k);
  const auto m = g.rows();
  return linalg::log_det_hpd(ComplexMatrix::Identity(m, m) + g, config.log_base);
}

double sum_rate(const Solution& solution, const ChannelSet& channels, const SystemConfig& config) {
  check_dimensions(solution, channels);
  double total = 0.0;
  for (int k = 0; k < channels.k(); ++k) total += user_rate(solution, channels, config, k);
  return total;
}

double f3_objective(const Solution& solution, const AuxiliaryState& aux,
                    const ChannelSet& channels, const SystemConfig& config) {
  check_dimensions(solution, channels);
  double total = 0.0;
  for (int k = 0; k < channels.k(); ++k) {
    const ReceiverTerms t = receiver_terms(solution, channels, config, k);
    const ComplexMatrix& u = aux.u[k];
    const ComplexMatrix& l = aux.l[k];
    const auto m = u.rows();
    const ComplexMatrix u_bar = u + ComplexMatrix::Identity(m, m);
    const ComplexMatrix v = t.total_covariance();
    total += linalg::log_det_hpd(linalg::symmetrize(u_bar), LogBase::kE) - u.trace().real() +
             2.0 * (u_bar * t.signal.adjoint() * l).trace().real() -
             (u_bar * l.adjoint() * v * l).trace().real();
  }
  return total * nats_to(config.log_base);
}

double FeasibilityReport::min_eh_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (double s : eh_slack) m = std::min(m, s);
  return m;
}

bool FeasibilityReport::feasible(const SystemConfig& config) const {
  if (power_slack < -1e-8 * config.p_max) return false;
  for (std::size_t k = 0; k < eh_slack.size(); ++k) {
    if (eh_slack[k] < -1e-6 * config.e_min[k]) return false;
  }
  for (double s : modulus_slack) {
    if (s < -1e-10) return false;
  }
  for (double s : rho_lower_slack) {
    if (!(s > 0.0)) return false;
  }
  for (double s : rho_upper_slack) {
    if (!(s > 0.0)) return false;
  }
  return true;
}

FeasibilityReport check_feasibility(const Solution& solution, const ChannelSet& channels,
                                    const SystemConfig& config) {
  check_dimensions(solution, channels);
  FeasibilityReport report;
  report.power_slack = config.p_max - transmit_power(solution.w);
  for (int k = 0; k < channels.k(); ++k) {
    report.eh_slack.push_back(harvested_energy(solution, channels, config, k) - config.e_min[k]);
    report.rho_lower_slack.push_back(solution.rho[k]);
    report.rho_upper_slack.push_back(1.0 - solution.rho[k]);
  }
  for (Eigen::Index i = 0; i < solution.theta.size(); ++i) {
    report.modulus_slack.push_back(-std::abs(std::abs(solution.theta(i)) - config.alpha));
  }
  return report;
}

}  // namespace swipt
