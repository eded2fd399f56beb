#include "swipt/atb_stage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "swipt/error.hpp"

namespace swipt {

namespace {

// Everything needed to map multipliers (mu) to beamformers at a fixed tau.
struct DualSystem {
  std::vector<ComplexMatrix> x;                   // Abar^-1 S_i
  std::vector<std::vector<ComplexMatrix>> y;      // y[k][i] = Abar^-1 B_k W_i^(n)
  std::vector<std::vector<ComplexMatrix>> grad;   // grad[k][i] = B_k W_i^(n)
  Eigen::VectorXd lhs0;                           // linearized lhs at mu = 0
  Eigen::MatrixXd g;                              // d lhs_k / d mu_j
};

double tau_scale(const AtbConstants& c) {
  const double m = static_cast<double>(std::max<Eigen::Index>(1, c.a.rows()));
  return std::max(c.a.trace().real() / m, std::numeric_limits<double>::min());
}

// Keeps A + tau I factorizable when tau = 0 and A is rank deficient.
double regularization(const AtbConstants& c) { return 1e-12 * tau_scale(c); }

DualSystem build_dual(const std::vector<ComplexMatrix>& w_prev, double tau,
                      const AtbConstants& c) {
  const int k_count = static_cast<int>(c.s.size());
  const auto m_b = c.a.rows();
  const auto m_u = c.s.empty() ? 0 : c.s.front().cols();
  const ComplexMatrix a_bar =
      c.a + (tau + regularization(c)) * ComplexMatrix::Identity(m_b, m_b);
  const linalg::HpdFactor factor(linalg::symmetrize(a_bar));

  // One solve with all right-hand sides stacked side by side.
  const int blocks = k_count + k_count * k_count;
  ComplexMatrix rhs(m_b, blocks * m_u);
  DualSystem d;
  d.grad.assign(k_count, std::vector<ComplexMatrix>(k_count));
  for (int i = 0; i < k_count; ++i) rhs.middleCols(i * m_u, m_u) = c.s[i];
  for (int k = 0; k < k_count; ++k) {
    for (int i = 0; i < k_count; ++i) {
      d.grad[k][i] = c.b[k] * w_prev[i];
      rhs.middleCols((k_count + k * k_count + i) * m_u, m_u) = d.grad[k][i];
    }
  }
  const ComplexMatrix sol = factor.solve(rhs);
  d.x.resize(k_count);
  d.y.assign(k_count, std::vector<ComplexMatrix>(k_count));
  for (int i = 0; i < k_count; ++i) d.x[i] = sol.middleCols(i * m_u, m_u);
  for (int k = 0; k < k_count; ++k) {
    for (int i = 0; i < k_count; ++i) {
      d.y[k][i] = sol.middleCols((k_count + k * k_count + i) * m_u, m_u);
    }
  }
  d.lhs0 = Eigen::VectorXd::Zero(k_count);
  d.g = Eigen::MatrixXd::Zero(k_count, k_count);
  for (int k = 0; k < k_count; ++k) {
    for (int i = 0; i < k_count; ++i) {
      d.lhs0(k) += 2.0 * linalg::real_inner(d.grad[k][i], d.x[i]);
      for (int j = 0; j < k_count; ++j) {
        d.g(k, j) += 2.0 * linalg::real_inner(d.grad[k][i], d.y[j][i]);
      }
    }
  }
  d.g = 0.5 * (d.g + d.g.transpose());
  return d;
}

std::vector<ComplexMatrix> primal(const DualSystem& d, const Eigen::VectorXd& mu) {
  std::vector<ComplexMatrix> w = d.x;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
      if (mu(k) != 0.0) w[i] += mu(k) * d.y[k][i];
    }
  }
  return w;
}

// mu >= 0, G mu + q >= 0, mu'(G mu + q) = 0 with q = lhs0 - e_ddot.
// Projected Gauss-Seidel (each coordinate step is the single-constraint
// closed form) followed by an exact solve on the detected active set.
Eigen::VectorXd solve_multipliers(const DualSystem& d, const std::vector<double>& e_ddot,
                                  Eigen::VectorXd mu) {
  const Eigen::Index k_count = d.lhs0.size();
  Eigen::VectorXd q(k_count);
  for (Eigen::Index k = 0; k < k_count; ++k) q(k) = d.lhs0(k) - e_ddot[k];
  if (mu.size() != k_count) mu = Eigen::VectorXd::Zero(k_count);
  const double g_max = d.g.diagonal().cwiseAbs().maxCoeff();

  for (Eigen::Index k = 0; k < k_count; ++k) {
    if (d.g(k, k) <= 1e-14 * g_max || d.g(k, k) <= 0.0) {
      // Only a problem if the constraint can ever be violated.
      if (q(k) < 0.0) {
        std::ostringstream os;
        os << "PSR " << k << ": linearized harvesting constraint has no gradient";
        throw SolverError(ErrorCode::kDegenerateEHGeometry, os.str());
      }
      mu(k) = 0.0;
    }
  }

  for (int sweep = 0; sweep < 5000; ++sweep) {
    double change = 0.0;
    double size = 0.0;
    for (Eigen::Index k = 0; k < k_count; ++k) {
      if (!(d.g(k, k) > 1e-14 * g_max)) continue;
      const double residual = q(k) + d.g.row(k).dot(mu);
      const double next = std::max(0.0, mu(k) - residual / d.g(k, k));
      change = std::max(change, std::abs(next - mu(k)));
      mu(k) = next;
      size = std::max(size, next);
    }
    if (change <= 1e-15 * size || size == 0.0) break;
  }

  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < k_count; ++k) {
    if (mu(k) > 0.0) active.push_back(k);
  }
  if (!active.empty()) {
    const auto n = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd ga(n, n);
    Eigen::VectorXd qa(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      qa(r) = -q(active[r]);
      for (Eigen::Index c = 0; c < n; ++c) ga(r, c) = d.g(active[r], active[c]);
    }
    const Eigen::VectorXd exact = ga.ldlt().solve(qa);
    bool ok = exact.allFinite() && (exact.array() > 0.0).all();
    if (ok) {
      Eigen::VectorXd candidate = Eigen::VectorXd::Zero(k_count);
      for (Eigen::Index r = 0; r < n; ++r) candidate(active[r]) = exact(r);
      const Eigen::VectorXd slack = d.g * candidate + q;
      for (Eigen::Index k = 0; k < k_count; ++k) {
        if (candidate(k) == 0.0 && slack(k) < -1e-12 * std::max(1.0, std::abs(e_ddot[k]))) ok = false;
      }
      if (ok) mu = candidate;
    }
  }
  return mu;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

AtbKkt kkt_residuals(const std::vector<ComplexMatrix>& w, const std::vector<ComplexMatrix>& w_prev,
                     const std::vector<double>& mu, double tau,
                     const std::vector<EhLinearization>& lin, const AtbConstants& c,
                     double p_max) {
  AtbKkt kkt;
  const auto m_b = c.a.rows();
  const ComplexMatrix a_bar = c.a + tau * ComplexMatrix::Identity(m_b, m_b);
  double residual = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    ComplexMatrix pull = c.s[i];
    for (std::size_t k = 0; k < mu.size(); ++k) pull += mu[k] * (c.b[k] * w_prev[i]);
    const ComplexMatrix push = a_bar * w[i];
    residual += (push - pull).squaredNorm();
    scale += std::max(push.squaredNorm(), pull.squaredNorm());
  }
  kkt.stationarity = scale > 0.0 ? std::sqrt(residual / scale) : 0.0;

  const double f5 = std::max(std::abs(f5_objective(w, c)), std::numeric_limits<double>::min());
  const double power = transmit_power(w);
  kkt.power_complementarity = std::abs(tau * (p_max - power)) / f5;
  kkt.power_violation = std::max(0.0, power - p_max) / p_max;
  for (std::size_t k = 0; k < lin.size(); ++k) {
    const double slack = lin[k].lhs(w) - lin[k].e_ddot;
    kkt.eh_complementarity = std::max(kkt.eh_complementarity, std::abs(mu[k] * slack) / f5);
    if (lin[k].e_ddot > 0.0) {
      kkt.eh_violation = std::max(kkt.eh_violation, std::max(0.0, -slack) / lin[k].e_ddot);
    }
  }
  return kkt;
}

struct SubproblemSolution {
  std::vector<ComplexMatrix> w;
  Eigen::VectorXd mu;
  double tau = 0.0;
};

SubproblemSolution solve_at_tau(const std::vector<ComplexMatrix>& w_prev, double tau,
                                const std::vector<double>& e_ddot, const AtbConstants& c,
                                const Eigen::VectorXd& mu_hint) {
  const DualSystem d = build_dual(w_prev, tau, c);
  SubproblemSolution s;
  s.tau = tau;
  s.mu = solve_multipliers(d, e_ddot, mu_hint);
  s.w = primal(d, s.mu);
  return s;
}

// Smallest tau >= 0 whose minimizer meets the power budget. Transmit power
// is non-increasing in tau, so the root is bracketed by doubling and then
// bisected.
SubproblemSolution solve_subproblem(const std::vector<ComplexMatrix>& w_prev,
                                    const std::vector<double>& e_ddot, const AtbConstants& c,
                                    double p_max) {
  SubproblemSolution lo = solve_at_tau(w_prev, 0.0, e_ddot, c, {});
  if (transmit_power(lo.w) <= p_max) return lo;

  double tau_lo = 0.0;
  double tau_hi = tau_scale(c);
  SubproblemSolution hi = solve_at_tau(w_prev, tau_hi, e_ddot, c, lo.mu);
  int doublings = 0;
  while (transmit_power(hi.w) > p_max) {
    if (++doublings > 400) {
      throw SolverError(ErrorCode::kEHUnreachableByBeamforming,
                        "linearized harvesting constraints exceed the power budget");
    }
    tau_lo = tau_hi;
    tau_hi *= 2.0;
    hi = solve_at_tau(w_prev, tau_hi, e_ddot, c, hi.mu);
  }
  for (int it = 0; it < 200; ++it) {
    const double power = transmit_power(hi.w);
    if (p_max - power <= 1e-13 * p_max) break;
    if (tau_hi - tau_lo <= 1e-15 * tau_hi) break;
    const double mid = 0.5 * (tau_lo + tau_hi);
    SubproblemSolution m = solve_at_tau(w_prev, mid, e_ddot, c, hi.mu);
    if (transmit_power(m.w) > p_max) {
      tau_lo = mid;
    } else {
      tau_hi = mid;
      hi = std::move(m);
    }
  }
  return hi;
}

bool expansion_point_feasible(const std::vector<ComplexMatrix>& w,
                              const std::vector<EhLinearization>& lin, double p_max) {
  if (transmit_power(w) > p_max * (1.0 + 1e-9)) return false;
  for (const auto& l : lin) {
    if (l.lhs(w) < l.e_ddot * (1.0 - 1e-9)) return false;
  }
  return true;
}

}  // namespace

double EhLinearization::lhs(const std::vector<ComplexMatrix>& w) const {
  double v = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) v += 2.0 * linalg::real_inner(gradient[i], w[i]);
  return v;
}

AtbConstants assemble_atb_constants(const Solution& solution, const AuxiliaryState& aux,
                                    const ChannelSet& channels, const SystemConfig& config) {
  check_dimensions(solution, channels);
  const int k_count = channels.k();
  const int m_b = channels.m_b();
  AtbConstants c;
  c.a = ComplexMatrix::Zero(m_b, m_b);
  for (int k = 0; k < k_count; ++k) {
    const ComplexMatrix h = effective_channel(channels, solution.theta, k);
    const auto m_u = aux.u[k].rows();
    const ComplexMatrix u_bar = aux.u[k] + ComplexMatrix::Identity(m_u, m_u);
    const ComplexMatrix hl = h * aux.l[k];
    c.a.noalias() += hl * u_bar * hl.adjoint();
    c.s.push_back(hl * u_bar);
    c.b.push_back(linalg::symmetrize(h * h.adjoint()));
    c.e_dot.push_back(config.e_min[k] / (config.eta[k] * (1.0 - solution.rho[k])));
  }
  c.a = linalg::symmetrize(c.a);
  return c;
}

EhLinearization linearize_eh(const std::vector<ComplexMatrix>& w_prev, const ComplexMatrix& b_k,
                             double e_dot_k) {
  EhLinearization lin;
  lin.e_ddot = e_dot_k;
  for (const auto& w : w_prev) {
    lin.gradient.push_back(b_k * w);
    lin.e_ddot += linalg::real_inner(w, lin.gradient.back());
  }
  return lin;
}

double f5_objective(const std::vector<ComplexMatrix>& w, const AtbConstants& c) {
  double v = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    v += linalg::real_inner(w[k], c.a * w[k]) - 2.0 * linalg::real_inner(w[k], c.s[k]);
  }
  return v;
}

std::vector<ComplexMatrix> update_w(const AtbState& state, const AtbConstants& constants) {
  const DualSystem d = build_dual(state.w, state.tau, constants);
  return primal(d, to_eigen(state.mu));
}

std::vector<double> update_mu(const AtbState& state, const AtbConstants& constants) {
  const DualSystem d = build_dual(state.w, state.tau, constants);
  return to_std(solve_multipliers(d, state.e_ddot, {}));
}

double update_tau(double tau, const std::vector<ComplexMatrix>& w, double p_max, double step) {
  return std::max(0.0, tau + step * (transmit_power(w) - p_max));
}

AtbResult run_atb(const Solution& solution, const AuxiliaryState& aux, const ChannelSet& channels,
                  const SystemConfig& config, const AtbOptions& options) {
  const AtbConstants c = assemble_atb_constants(solution, aux, channels, config);
  const int k_count = channels.k();

  AtbResult result;
  std::vector<ComplexMatrix> w = solution.w;
  double f_prev = f5_objective(w, c);
  result.objective_trace.push_back(f_prev);
  double tau = 0.0;
  std::vector<double> mu(k_count, 0.0);
  std::vector<EhLinearization> lin;
  std::vector<ComplexMatrix> w_prev;

  for (int n = 1; n <= config.n_max; ++n) {
    lin.clear();
    std::vector<double> e_ddot;
    for (int k = 0; k < k_count; ++k) {
      lin.push_back(linearize_eh(w, c.b[k], c.e_dot[k]));
      e_ddot.push_back(lin.back().e_ddot);
    }
    w_prev = w;
    if (options.tau_rule == TauRule::kBisection) {
      SubproblemSolution s;
      try {
        s = solve_subproblem(w, e_ddot, c, config.p_max);
      } catch (const SolverError& e) {
        // The feasible set can shrink to the expansion point itself, e.g. a
        // full-power matched filter with a tight floor; the dual is then
        // unbounded but W^(n) is optimal.
        if (e.code() != ErrorCode::kEHUnreachableByBeamforming ||
            !expansion_point_feasible(w, lin, config.p_max)) {
          throw;
        }
        result.objective_trace.push_back(f_prev);
        result.iterations = n;
        result.converged = true;
        break;
      }
      w = std::move(s.w);
      mu = to_std(s.mu);
      tau = s.tau;
    } else {
      AtbState state{w, mu, tau, e_ddot, f_prev};
      state.mu = update_mu(state, c);
      w = update_w(state, c);
      mu = state.mu;
      const double step = 0.1 / std::sqrt(static_cast<double>(n)) * tau_scale(c) / config.p_max;
      tau = update_tau(tau, w, config.p_max, step);
    }
    const double f = f5_objective(w, c);
    result.objective_trace.push_back(f);
    result.iterations = n;
    const double denom = std::abs(f_prev) > 0.0 ? std::abs(f_prev) : 1.0;
    const bool settled = std::abs(f - f_prev) / denom < config.eps1;
    f_prev = f;
    if (settled) {
      result.converged = true;
      break;
    }
  }
  result.kkt = kkt_residuals(w, w_prev, mu, tau, lin, c, config.p_max);
  result.w = std::move(w);
  result.tau = tau;
  result.mu = std::move(mu);
  return result;
}

}  // namespace swipt
