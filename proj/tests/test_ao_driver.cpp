#include <gtest/gtest.h>

#include <chrono>

#include "swipt/ao_driver.hpp"
#include "swipt/error.hpp"
#include "test_support.hpp"

namespace swipt {
namespace {

using testing::feasible_point_config;

SystemConfig short_run(SystemConfig cfg, int t_max) {
  cfg.t_max = t_max;
  return cfg;
}

TEST(Initialize, FeasibleAndDeterministic) {
  const SystemConfig cfg = feasible_point_config();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ChannelSet ch = generate_channels(cfg, Geometry{}, seed);
    const Initialization a = initialize(ch, cfg, seed);
    const Initialization b = initialize(ch, cfg, seed);
    EXPECT_TRUE(check_feasibility(a.solution, ch, cfg).feasible(cfg));
    EXPECT_NEAR(transmit_power(a.solution.w), cfg.p_max, 1e-9 * cfg.p_max);
    EXPECT_EQ(a.solution.theta, b.solution.theta);
    for (int k = 0; k < cfg.k; ++k) EXPECT_EQ(a.solution.w[k], b.solution.w[k]);
    EXPECT_EQ(a.solution.rho, b.solution.rho);
  }
}

TEST(Initialize, SingleUserMatchedFilter) {
  SystemConfig cfg;
  cfg.k = 1;
  cfg.m_u = 1;
  cfg.e_min = {1e-6};
  cfg.eta = {0.7};
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 3);
  const Initialization init = initialize(ch, cfg, 3);
  const ComplexMatrix h = effective_channel(ch, init.solution.theta, 0);
  const ComplexMatrix expected = std::sqrt(cfg.p_max) * h / h.norm();
  EXPECT_LE((init.solution.w[0] - expected).norm(), 1e-12 * expected.norm());
}

TEST(Initialize, DefaultFloorIsInfeasible) {
  const SystemConfig cfg;
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 1);
  EXPECT_THROW(initialize(ch, cfg, 1), InfeasibleEHError);
}

TEST(RunJpsapbo, BitIdenticalTraces) {
  const SystemConfig cfg = short_run(feasible_point_config(), 10);
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 2);
  const RunResult a = run_jpsapbo(ch, cfg, 2);
  const RunResult b = run_jpsapbo(ch, cfg, 2);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].rate, b.trace[i].rate);
    EXPECT_EQ(a.trace[i].rho, b.trace[i].rho);
  }
}

TEST(RunJpsapbo, MonotoneAndFeasible) {
  const SystemConfig cfg = short_run(feasible_point_config(), 30);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ChannelSet ch = generate_channels(cfg, Geometry{}, seed);
    const RunResult r = run_jpsapbo(ch, cfg, seed);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      EXPECT_GE(r.trace[i].rate, r.trace[i - 1].rate * (1.0 - 1e-9));
      EXPECT_EQ(r.trace[i].iteration, static_cast<int>(i));
    }
    EXPECT_TRUE(check_feasibility(r.solution, ch, cfg).feasible(cfg));
    EXPECT_NEAR(r.rate(), sum_rate(r.solution, ch, cfg), 1e-12 * r.rate());
  }
}

TEST(RunJpsapbo, StageChainIsMonotone) {
  const SystemConfig cfg = short_run(feasible_point_config(), 15);
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 4);
  DriverOptions opt;
  opt.record_stage_objectives = true;
  const RunResult r = run_jpsapbo(ch, cfg, 4, opt);
  ASSERT_FALSE(r.stage_objectives.empty());
  for (const auto& chain : r.stage_objectives) {
    ASSERT_EQ(chain.size(), 5u);
    for (std::size_t s = 1; s < chain.size(); ++s) {
      EXPECT_GE(chain[s], chain[s - 1] - 1e-9 * std::abs(chain[s - 1]));
    }
  }
}

// One user, no IRS: a grid over rho with full-power matched-filter beams
// bounds what the joint design should reach.
TEST(RunJpsapbo, SingleUserNearGridOptimum) {
  SystemConfig cfg;
  cfg.k = 1;
  cfg.m_b = 2;
  cfg.m_u = 1;
  cfg.n = 0;
  cfg.e_min = {1e-6};
  cfg.eta = {0.7};
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 5);
  const RunResult r = run_jpsapbo(ch, cfg, 5);
  Solution s;
  s.theta = ComplexVector(0);
  const ComplexMatrix h = ch.d[0];
  s.w = {std::sqrt(cfg.p_max) * h / h.norm()};
  double best = 0.0;
  for (int i = 1; i < 1000; ++i) {
    s.rho = {i / 1000.0};
    if (harvested_energy(s, ch, cfg, 0) < cfg.e_min[0]) continue;
    best = std::max(best, sum_rate(s, ch, cfg));
  }
  ASSERT_GT(best, 0.0);
  EXPECT_GE(r.rate(), 0.999 * best);
}

TEST(RunScheme, FixedSplitKeepsRho) {
  const SystemConfig cfg = short_run(feasible_point_config(), 10);
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 6);
  const RunResult r = run_scheme(Scheme::kFixedPs, ch, cfg, 6);
  for (const auto& t : r.trace) {
    for (double rho : t.rho) EXPECT_EQ(rho, 0.5);
  }
}

TEST(RunScheme, RandomPhaseKeepsTheta) {
  const SystemConfig cfg = short_run(feasible_point_config(), 10);
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 7);
  const Initialization init = initialize(ch, cfg, 7);
  const RunResult r = run_scheme(Scheme::kRandomPhase, ch, cfg, 7);
  EXPECT_EQ(r.solution.theta, init.solution.theta);
}

TEST(RunScheme, NoIrsIgnoresPhaseSeed) {
  const SystemConfig cfg = short_run(feasible_point_config(), 10);
  const ChannelSet ch = generate_channels(cfg, Geometry{}, 8);
  const RunResult a = run_scheme(Scheme::kNoIrs, ch, cfg, 8);
  const RunResult b = run_scheme(Scheme::kNoIrs, ch, cfg, 99);
  EXPECT_EQ(a.rate(), b.rate());
}

TEST(Scheme, NamesRoundTrip) {
  for (Scheme s : all_schemes()) EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_THROW(parse_scheme("bogus"), ConfigError);
}

// Wall time per outer iteration should grow no faster than N^3.
TEST(RunJpsapbo, PerIterationCostScaling) {
  std::vector<double> per_iter;
  const std::vector<int> sizes{10, 20, 40};
  for (int n : sizes) {
    SystemConfig cfg = short_run(feasible_point_config(), 5);
    cfg.n = n;
    const ChannelSet ch = generate_channels(cfg, Geometry{}, 1);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_jpsapbo(ch, cfg, 1);
    const auto t1 = std::chrono::steady_clock::now();
    per_iter.push_back(std::chrono::duration<double>(t1 - t0).count() /
                       std::max(1, r.iterations()));
  }
  // 4x elements: cubic growth is 64x; allow generous timing noise.
  EXPECT_LE(per_iter[2], 2.0 * 64.0 * per_iter[0] + 1e-3);
}

}  // namespace
}  // namespace swipt
