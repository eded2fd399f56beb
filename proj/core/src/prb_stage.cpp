#include "swipt/prb_stage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swipt/error.hpp"

namespace swipt {

namespace {

double quad(const ComplexMatrix& m, const ComplexVector& x) { return x.dot(m * x).real(); }

// 2 Re theta^H v
double lin_form(const ComplexVector& theta, const ComplexVector& v) {
  return 2.0 * theta.dot(v).real();
}

ComplexVector penalized_direction(const ComplexVector& r, const EhThetaLinearization& lin,
                                  const std::vector<double>& chi) {
  ComplexVector f = r;
  for (std::size_t k = 0; k < chi.size(); ++k) {
    if (chi[k] != 0.0) f += chi[k] * lin.g[k];
  }
  return f;
}

double linear_violation(const EhThetaLinearization& lin, int k, const ComplexVector& theta) {
  return lin.e_hat[k] - lin_form(theta, lin.g[k]);
}

// Coordinate-wise exact minimization of the penalty dual
//   D(chi) = max_theta 2 Re theta^H (r + sum chi_k g_k) - chi . e_hat.
// Along chi_k the derivative is minus the k-th linearized violation, which is
// monotone, so each coordinate is a bisection for zero violation.
std::vector<double> minimize_penalty_dual(const ComplexVector& r, const EhThetaLinearization& lin,
                                          const ComplexVector& theta_prev, double alpha,
                                          std::vector<double> chi) {
  const int k_count = static_cast<int>(chi.size());
  const double r_norm = std::max(r.norm(), std::numeric_limits<double>::min());
  auto violation_at = [&](int k, double t) {
    std::vector<double> trial = chi;
    trial[k] = t;
    const ComplexVector theta = update_theta(penalized_direction(r, lin, trial), theta_prev, alpha);
    return linear_violation(lin, k, theta);
  };
  for (int sweep = 0; sweep < 20; ++sweep) {
    double change = 0.0;
    for (int k = 0; k < k_count; ++k) {
      const double g_norm = lin.g[k].norm();
      if (!(g_norm > 0.0)) {
        chi[k] = 0.0;
        continue;
      }
      const double tol = 1e-12 * std::max(std::abs(lin.e_hat[k]), 1e-300);
      double next;
      if (violation_at(k, 0.0) <= tol) {
        next = 0.0;
      } else {
        double lo = 0.0;
        double hi = std::max(chi[k], 1e-6 * r_norm / g_norm);
        int doublings = 0;
        while (violation_at(k, hi) > tol && doublings < 200) {
          lo = hi;
          hi *= 2.0;
          ++doublings;
        }
        for (int it = 0; it < 100 && hi - lo > 1e-13 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (violation_at(k, mid) > tol) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        next = hi;
      }
      change = std::max(change, std::abs(next - chi[k]) / std::max(next, 1e-300));
      chi[k] = next;
    }
    if (change < 1e-9) break;
  }
  return chi;
}

}  // namespace

PrbState assemble_qp(const Solution& solution, const AuxiliaryState& aux,
                     const ChannelSet& channels, const SystemConfig& config) {
  check_dimensions(solution, channels);
  const int k_count = channels.k();
  const Eigen::Index n = channels.n();
  const ComplexMatrix& f = channels.f;
  const ComplexMatrix w_hat = transmit_covariance(solution.w);
  const ComplexMatrix fw = f * w_hat;  // F What
  const ComplexMatrix q_t = (fw * f.adjoint()).transpose();

  PrbState s;
  s.theta = solution.theta;
  s.chi.assign(k_count, 0.0);
  s.alpha = config.alpha;
  ComplexMatrix t = ComplexMatrix::Zero(n, n);
  ComplexMatrix c_full = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < k_count; ++k) {
    const ComplexMatrix& d = channels.d[k];
    const ComplexMatrix& r = channels.r[k];
    const auto m_u = aux.u[k].rows();
    const ComplexMatrix u_bar = aux.u[k] + ComplexMatrix::Identity(m_u, m_u);
    const ComplexMatrix p = aux.l[k] * u_bar * aux.l[k].adjoint();
    const ComplexMatrix rp = r * p;
    t.noalias() += rp * r.adjoint();
    const ComplexMatrix fwd = fw * d;  // F What D_k
    c_full.noalias() += fwd * rp.adjoint();
    c_full.noalias() -= (f * solution.w[k]) * (r * aux.l[k] * u_bar).adjoint();

    s.j_bar.push_back(linalg::symmetrize(linalg::hadamard(r * r.adjoint(), q_t)));
    s.lambda.push_back((fwd * r.adjoint()).diagonal());
    const double direct = (d.adjoint() * w_hat * d).trace().real();
    s.direct_power.push_back(direct);
    const double e_dot = config.e_min[k] / (config.eta[k] * (1.0 - solution.rho[k]));
    s.e_dddot.push_back(e_dot - direct);
  }
  s.omega = linalg::symmetrize(linalg::hadamard(t, q_t));
  s.c = c_full.diagonal();
  s.omega_max = linalg::max_eigenvalue_hpsd(s.omega);
  s.e_hat = linearize_eh_theta(s, s.theta).e_hat;
  return s;
}

double f7_objective(const PrbState& state, const ComplexVector& theta) {
  return quad(state.omega, theta) + lin_form(theta, state.c.conjugate());
}

double eh_quadratic(const PrbState& state, int k, const ComplexVector& theta) {
  return quad(state.j_bar[k], theta) + lin_form(theta, state.lambda[k].conjugate());
}

EhThetaLinearization linearize_eh_theta(const PrbState& state, const ComplexVector& theta_prev) {
  EhThetaLinearization lin;
  for (std::size_t k = 0; k < state.j_bar.size(); ++k) {
    const ComplexVector jt = state.j_bar[k] * theta_prev;
    lin.g.push_back(state.lambda[k].conjugate() + jt);
    lin.e_hat.push_back(state.e_dddot[k] + theta_prev.dot(jt).real());
  }
  return lin;
}

ComplexVector mm_surrogate_vector(const PrbState& state, const ComplexVector& theta_prev) {
  return state.omega_max * theta_prev - state.omega * theta_prev - state.c.conjugate();
}

double surrogate_value(const PrbState& state, const ComplexVector& theta,
                       const ComplexVector& theta_prev) {
  const ComplexVector r = mm_surrogate_vector(state, theta_prev);
  const double offset = state.omega_max * theta_prev.squaredNorm() - quad(state.omega, theta_prev);
  return state.omega_max * theta.squaredNorm() + offset - lin_form(theta, r);
}

ComplexVector update_theta(const ComplexVector& f, const ComplexVector& theta_prev, double alpha) {
  ComplexVector theta(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const Complex v = f(i);
    const Complex basis = v == Complex(0.0, 0.0) ? theta_prev(i) : v;
    theta(i) = std::polar(alpha, std::arg(basis));
  }
  return theta;
}

std::vector<double> update_penalty(const std::vector<double>& chi,
                                   const EhThetaLinearization& lin, const ComplexVector& theta,
                                   const std::vector<double>& step) {
  std::vector<double> next(chi.size());
  for (std::size_t k = 0; k < chi.size(); ++k) {
    next[k] = std::max(0.0, chi[k] + step[k] * linear_violation(lin, static_cast<int>(k), theta));
  }
  return next;
}

PrbResult run_prb(const Solution& solution, const AuxiliaryState& aux, const ChannelSet& channels,
                  const SystemConfig& config, const PrbOptions& options) {
  PrbState state = assemble_qp(solution, aux, channels, config);
  const int k_count = channels.k();
  const double alpha = config.alpha;

  auto eh_ok = [&](const ComplexVector& theta) {
    for (int k = 0; k < k_count; ++k) {
      const double need = state.e_dddot[k] + state.direct_power[k];
      const double have = eh_quadratic(state, k, theta) + state.direct_power[k];
      if (have < need - options.eh_tolerance * std::abs(need)) return false;
    }
    return true;
  };

  PrbResult result;
  result.omega_max = state.omega_max;
  ComplexVector theta = state.theta;
  double f_prev = f7_objective(state, theta);
  result.objective_trace.push_back(f_prev);
  const bool start_ok = eh_ok(theta);
  ComplexVector best = theta;
  double best_f = f_prev;
  bool have_feasible = start_ok;

  if (theta.size() == 0) {
    result.theta = theta;
    result.converged = true;
    result.chi = state.chi;
    return result;
  }

  for (int q = 1; q <= config.q_max; ++q) {
    const EhThetaLinearization lin = linearize_eh_theta(state, theta);
    state.e_hat = lin.e_hat;
    const ComplexVector r = mm_surrogate_vector(state, theta);
    if (options.penalty_rule == PenaltyRule::kDualBisection) {
      state.chi = minimize_penalty_dual(r, lin, theta, alpha, state.chi);
    }
    const ComplexVector next = update_theta(penalized_direction(r, lin, state.chi), theta, alpha);
    if (options.penalty_rule == PenaltyRule::kSubgradient) {
      std::vector<double> step(k_count);
      const double base = 0.1 / std::sqrt(static_cast<double>(q));
      for (int k = 0; k < k_count; ++k) {
        const double g_norm = lin.g[k].norm();
        const double e_scale = std::max(std::abs(lin.e_hat[k]), 1e-300);
        step[k] = g_norm > 0.0 ? base * r.norm() / (g_norm * e_scale) : 0.0;
      }
      state.chi = update_penalty(state.chi, lin, next, step);
    }
    theta = next;
    const double f = f7_objective(state, theta);
    result.objective_trace.push_back(f);
    result.iterations = q;
    if (eh_ok(theta) && f <= best_f) {
      best = theta;
      best_f = f;
      have_feasible = true;
    }
    const double denom = std::abs(f_prev) > 0.0 ? std::abs(f_prev) : 1.0;
    const bool settled = std::abs(f - f_prev) / denom < config.eps2;
    f_prev = f;
    if (settled) {
      result.converged = true;
      break;
    }
  }
  result.eh_satisfied = have_feasible;
  result.theta = have_feasible ? best : state.theta;
  result.chi = state.chi;
  return result;
}

}  // namespace swipt
