#include <gtest/gtest.h>

#include <cmath>

#include "swipt/channel.hpp"
#include "swipt/error.hpp"
#include "swipt/rng.hpp"

namespace swipt {
namespace {

TEST(Rng, StreamsAreReproducible) {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.complex_normal(), b.complex_normal());
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
}

TEST(Rng, UniformRangeAndGaussianMoments) {
  RandomStream rng(9);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const Complex z = rng.complex_normal();
    sum += z.real() + z.imag();
    sq += std::norm(z);
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(PathLoss, KnownValues) {
  EXPECT_NEAR(path_loss(1.0, 2.2, -30.0, 1.0), 1e-3, 1e-15);
  EXPECT_NEAR(path_loss(10.0, 2.0, -30.0, 1.0), 1e-5, 1e-17);
  EXPECT_NEAR(path_loss(3.0, 7.0, -30.0, 3.0), 1e-3, 1e-15);
}

TEST(PathLoss, RejectsNonPositiveDistance) {
  try {
    path_loss(0.0, 2.0, -30.0, 1.0);
    FAIL() << "expected InvalidGeometry";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidGeometry);
  }
  EXPECT_THROW(path_loss(-1.0, 2.0, -30.0, 1.0), SolverError);
}

TEST(Steering, UlaShapes) {
  const ComplexVector one = steering_vector_ula(0.7, 1, 0.5);
  ASSERT_EQ(one.size(), 1);
  EXPECT_EQ(one(0), Complex(1.0, 0.0));
  const ComplexVector broadside = steering_vector_ula(0.0, 6, 0.5);
  for (Eigen::Index i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(broadside(i) - 1.0), 0.0, 1e-15);
  const ComplexVector tilted = steering_vector_ula(1.1, 8, 0.5);
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(tilted(i)), 1.0, 1e-12);
  EXPECT_NEAR(std::arg(tilted(1)), std::remainder(M_PI * std::sin(1.1), 2 * M_PI), 1e-12);
}

TEST(Steering, UraShapes) {
  EXPECT_EQ(steering_vector_ura(0.3, 0.2, 1, 1, 0.5)(0), Complex(1.0, 0.0));
  const ComplexVector flat = steering_vector_ura(0.0, 0.0, 3, 4, 0.5);
  for (Eigen::Index i = 0; i < flat.size(); ++i) EXPECT_NEAR(std::abs(flat(i) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(steering_vector_ura(0.4, 0.1, 2, 3, 0.5).size(), 6);
  const ComplexVector a = steering_vector_ura(0.4, 0.3, 2, 3, 0.5);
  const ComplexVector h = steering_vector_ula(0.0, 2, 0.5);
  // Kronecker structure: entry (p, q) = h_p v_q.
  const double ph = M_PI * std::sin(0.4) * std::cos(0.3);
  const double pv = M_PI * std::sin(0.3);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 3; ++q) {
      EXPECT_NEAR(std::abs(a(p * 3 + q) - std::polar(1.0, ph * p + pv * q)), 0.0, 1e-12);
    }
  }
  EXPECT_EQ(h.size(), 2);
}

TEST(Steering, UraShapeSplit) {
  EXPECT_EQ(ura_shape(30, 0), std::make_pair(6, 5));
  EXPECT_EQ(ura_shape(50, 0), std::make_pair(10, 5));
  EXPECT_EQ(ura_shape(7, 0), std::make_pair(7, 1));
  EXPECT_EQ(ura_shape(30, 3), std::make_pair(10, 3));
  EXPECT_THROW(ura_shape(30, 4), SolverError);
}

TEST(Rician, MixingWeights) {
  const RicianWeights w = rician_weights(5.0);
  EXPECT_NEAR(w.los, 0.871635, 1e-4);  // sqrt(3.1623 / 4.1623)
  EXPECT_NEAR(w.nlos, 0.490156, 1e-4);  // sqrt(1 / 4.1623)
  EXPECT_NEAR(w.los * w.los + w.nlos * w.nlos, 1.0, 1e-14);
}

TEST(GenerateChannels, DimensionsAndDeterminism) {
  SystemConfig cfg;
  const ChannelSet a = generate_channels(cfg, Geometry{}, 7);
  const ChannelSet b = generate_channels(cfg, Geometry{}, 7);
  ASSERT_EQ(a.f.rows(), cfg.n);
  ASSERT_EQ(a.f.cols(), cfg.m_b);
  ASSERT_EQ(a.k(), cfg.k);
  for (int k = 0; k < cfg.k; ++k) {
    EXPECT_EQ(a.d[k].rows(), cfg.m_b);
    EXPECT_EQ(a.d[k].cols(), cfg.m_u);
    EXPECT_EQ(a.r[k].rows(), cfg.n);
    EXPECT_EQ(a.r[k].cols(), cfg.m_u);
    EXPECT_EQ(a.d[k], b.d[k]);
    EXPECT_EQ(a.r[k], b.r[k]);
  }
  EXPECT_EQ(a.f, b.f);
}

TEST(GenerateChannels, SeedChangesEveryLink) {
  SystemConfig cfg;
  const ChannelSet a = generate_channels(cfg, Geometry{}, 1);
  const ChannelSet b = generate_channels(cfg, Geometry{}, 2);
  EXPECT_NE(a.f, b.f);
  for (int k = 0; k < cfg.k; ++k) {
    EXPECT_NE(a.d[k], b.d[k]);
    EXPECT_NE(a.r[k], b.r[k]);
  }
}

TEST(GenerateChannels, PositionsInsideDisk) {
  SystemConfig cfg;
  cfg.k = 50;
  cfg.e_min.assign(50, 5e-4);
  cfg.eta.assign(50, 0.7);
  Geometry g;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ChannelSet c = generate_channels(cfg, g, seed);
    for (const auto& p : c.psr_positions) {
      EXPECT_LE(distance(p, g.psr_center), g.psr_scatter_radius);
    }
  }
}

TEST(GenerateChannels, PrefixStableInN) {
  SystemConfig small;
  small.n = 10;
  SystemConfig large;
  large.n = 20;
  const ChannelSet a = generate_channels(small, Geometry{}, 3);
  const ChannelSet b = generate_channels(large, Geometry{}, 3);
  for (int k = 0; k < small.k; ++k) EXPECT_EQ(a.d[k], b.d[k]);
  EXPECT_EQ(a.psr_positions.front().x, b.psr_positions.front().x);
}

TEST(GenerateChannels, NlosEntriesHaveUnitVariance) {
  // Pure scattering with path loss removed: beta -> 0 and C0 = 0 dB at d0
  // equal to every distance is not possible, so normalize by path loss.
  SystemConfig cfg;
  cfg.rician_beta_db = -300.0;
  cfg.c0_db = 0.0;
  cfg.chi_direct = 0.0;
  cfg.chi_relate = 0.0;
  double total = 0.0;
  int draws = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const ChannelSet c = generate_channels(cfg, Geometry{}, seed);
    total += c.f.squaredNorm() / static_cast<double>(c.f.size());
    ++draws;
  }
  const double mean = total / draws;
  EXPECT_GE(mean, 0.95);
  EXPECT_LE(mean, 1.05);
}

TEST(GenerateChannels, PureLosLimit) {
  SystemConfig cfg;
  cfg.rician_beta_db = 90.0;  // beta = 1e9
  const ChannelSet a = generate_channels(cfg, Geometry{}, 1);
  const ChannelSet b = generate_channels(cfg, Geometry{}, 2);
  // Same geometry except PSR drops; the AP -> IRS link is then purely
  // deterministic, so the seed-to-seed variation measures the NLOS share.
  const double spread = (a.f - b.f).squaredNorm();
  EXPECT_LT(spread, 1e-6 * a.f.squaredNorm());
}

TEST(GenerateChannels, ZeroElementsGivesEmptyIrsLinks) {
  SystemConfig cfg;
  cfg.n = 0;
  const ChannelSet c = generate_channels(cfg, Geometry{}, 1);
  EXPECT_EQ(c.f.rows(), 0);
  EXPECT_EQ(c.r.front().rows(), 0);
}

TEST(GenerateChannels, RejectsBadGeometry) {
  Geometry g;
  g.psr_scatter_radius = 0.0;
  EXPECT_THROW(generate_channels(SystemConfig{}, g, 1), SolverError);
  Geometry colocated;
  colocated.irs_position = colocated.ap_position;
  EXPECT_THROW(generate_channels(SystemConfig{}, colocated, 1), SolverError);
}

}  // namespace
}  // namespace swipt
