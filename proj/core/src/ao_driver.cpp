#include "swipt/ao_driver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "swipt/error.hpp"
#include "swipt/psr_stage.hpp"
#include "swipt/rng.hpp"

namespace swipt {

namespace {

constexpr std::uint64_t kTagPhases = 0x7E7A;
constexpr double kFixedRho = 0.5;

IterationTrace make_trace(int iteration, double rate, const Solution& solution,
                          const ChannelSet& channels, const SystemConfig& config) {
  IterationTrace t;
  t.iteration = iteration;
  t.rate = rate;
  t.power_used = transmit_power(solution.w);
  t.min_eh_slack = check_feasibility(solution, channels, config).min_eh_slack();
  t.rho = solution.rho;
  return t;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kJpsapbo: return "jpsapbo";
    case Scheme::kFixedPs: return "fixed_ps";
    case Scheme::kRandomPhase: return "random_phase";
    case Scheme::kNoIrs: return "no_irs";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : all_schemes()) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> schemes{Scheme::kJpsapbo, Scheme::kFixedPs,
                                           Scheme::kRandomPhase, Scheme::kNoIrs};
  return schemes;
}

Initialization initialize(const ChannelSet& channels, const SystemConfig& config,
                          std::uint64_t seed, double fixed_rho) {
  const int k_count = channels.k();
  Initialization init;
  Solution& s = init.solution;

  RandomStream phases(derive_seed(seed, kTagPhases));
  s.theta.resize(channels.n());
  for (Eigen::Index i = 0; i < s.theta.size(); ++i) {
    s.theta(i) = std::polar(config.alpha, 2.0 * std::numbers::pi * phases.uniform());
  }

  const double per_user = std::sqrt(config.p_max / k_count);
  for (int k = 0; k < k_count; ++k) {
    const ComplexMatrix h = effective_channel(channels, s.theta, k);
    const double norm = h.norm();
    if (!(norm > 0.0)) {
      throw SolverError(ErrorCode::kDegenerateEHGeometry, "effective channel is identically zero");
    }
    s.w.push_back(per_user / norm * h);
  }

  if (fixed_rho > 0.0) {
    s.rho.assign(k_count, fixed_rho);
    const FeasibilityReport report = check_feasibility(s, channels, config);
    for (int k = 0; k < k_count; ++k) {
      if (report.eh_slack[k] < 0.0) {
        throw InfeasibleEHError(k, -report.eh_slack[k] / (config.eta[k] * (1.0 - fixed_rho)));
      }
    }
  } else {
    s.rho.assign(k_count, 0.5);
    s.rho = update_rho(s, channels, config);
  }
  init.aux = closed_form_auxiliaries(s, channels, config);
  return init;
}

RunResult run_jpsapbo(const ChannelSet& channels, const SystemConfig& config, std::uint64_t seed,
                      const DriverOptions& options) {
  return run_scheme(Scheme::kJpsapbo, channels, config, seed, options);
}

RunResult run_scheme(Scheme scheme, const ChannelSet& channels_in, const SystemConfig& config,
                     std::uint64_t seed, const DriverOptions& options) {
  config.validate();
  const ChannelSet channels = scheme == Scheme::kNoIrs ? without_irs(channels_in) : channels_in;
  const bool pin_rho = scheme == Scheme::kFixedPs;
  const bool optimize_phase = scheme == Scheme::kJpsapbo || scheme == Scheme::kFixedPs;

  Initialization init = initialize(channels, config, seed, pin_rho ? kFixedRho : 0.0);
  RunResult out;
  Solution& sol = out.solution;
  AuxiliaryState& aux = out.aux;
  sol = std::move(init.solution);
  aux = std::move(init.aux);

  double rate = sum_rate(sol, channels, config);
  out.trace.push_back(make_trace(0, rate, sol, channels, config));

  for (int t = 1; t <= config.t_max; ++t) {
    std::vector<double> stages;
    auto record = [&] {
      if (options.record_stage_objectives) stages.push_back(f3_objective(sol, aux, channels, config));
    };

    aux.u = update_u(sol, channels, config);
    if (options.record_stage_objectives) {
      // Reference point of the chain: both auxiliaries at their closed forms.
      AuxiliaryState ref{aux.u, update_l(sol, channels, config)};
      stages.push_back(f3_objective(sol, ref, channels, config));
      aux.l = ref.l;
    }
    if (!pin_rho) sol.rho = update_rho(sol, channels, config);
    record();
    aux.l = update_l(sol, channels, config);
    record();

    AtbResult atb = run_atb(sol, aux, channels, config, options.atb);
    sol.w = std::move(atb.w);
    if (atb.converged) out.atb_kkt.push_back(atb.kkt);
    record();

    int prb_iters = 0;
    if (optimize_phase) {
      PrbResult prb = run_prb(sol, aux, channels, config, options.prb);
      sol.theta = std::move(prb.theta);
      prb_iters = prb.iterations;
      record();
    }

    const double next = sum_rate(sol, channels, config);
    if (next < rate - 1e-6 * std::abs(rate)) {
      std::ostringstream os;
      os << "rate fell from " << rate << " to " << next << " at iteration " << t;
      throw SolverError(ErrorCode::kMonotonicityViolation, os.str());
    }
    IterationTrace tr = make_trace(t, next, sol, channels, config);
    tr.atb_subiters = atb.iterations;
    tr.prb_subiters = prb_iters;
    out.trace.push_back(std::move(tr));
    if (options.record_stage_objectives) out.stage_objectives.push_back(std::move(stages));

    const double change = std::abs(next - rate) / std::max(std::abs(rate), 1e-300);
    rate = next;
    if (change < config.eps3) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace swipt
