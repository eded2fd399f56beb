#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "swipt/error.hpp"
#include "swipt/linalg.hpp"
#include "test_support.hpp"

namespace swipt {
namespace {

using testing::random_hpd;

TEST(HermitianTranspose, IdentityAndConjugation) {
  EXPECT_EQ(linalg::hermitian_transpose(ComplexMatrix::Identity(2, 2)),
            ComplexMatrix::Identity(2, 2));
  ComplexMatrix m(1, 1);
  m(0, 0) = Complex(0.0, 1.0);
  EXPECT_EQ(linalg::hermitian_transpose(m)(0, 0), Complex(0.0, -1.0));
}

TEST(HermitianTranspose, InvolutionIsBitExact) {
  RandomStream rng(1);
  const ComplexMatrix m = rng.complex_normal_matrix(3, 2);
  const ComplexMatrix back = linalg::hermitian_transpose(linalg::hermitian_transpose(m));
  EXPECT_EQ(back, m);
  EXPECT_EQ(linalg::hermitian_transpose(m).rows(), 2);
}

TEST(SolveHpd, IdentityAndScaling) {
  RandomStream rng(2);
  const ComplexMatrix b = rng.complex_normal_matrix(3, 2);
  EXPECT_LE((linalg::solve_hpd(ComplexMatrix::Identity(3, 3), b) - b).norm(), 1e-15);
  const ComplexMatrix half = linalg::solve_hpd(2.0 * ComplexMatrix::Identity(3, 3),
                                               ComplexMatrix::Identity(3, 3));
  EXPECT_LE((half - 0.5 * ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(SolveHpd, ResidualOracle) {
  RandomStream rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_hpd(rng, 4);
    const ComplexMatrix b = rng.complex_normal_matrix(4, 3);
    const ComplexMatrix x = linalg::solve_hpd(a, b);
    EXPECT_LE((a * x - b).norm() / b.norm(), 1e-9);
  }
}

TEST(SolveHpd, RejectsIndefiniteAndMismatched) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(1, 1) = -1.0;
  try {
    linalg::solve_hpd(a, ComplexMatrix::Identity(2, 2));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPositiveDefinite);
  }
  try {
    linalg::solve_hpd(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3));
    FAIL() << "expected DimensionMismatch";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(LogDetHpd, KnownValues) {
  EXPECT_DOUBLE_EQ(linalg::log_det_hpd(ComplexMatrix::Identity(2, 2), LogBase::kTwo), 0.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  EXPECT_NEAR(linalg::log_det_hpd(d, LogBase::kTwo), 1.0, 1e-15);
  EXPECT_NEAR(linalg::log_det_hpd(d, LogBase::kE), std::log(2.0), 1e-15);
}

TEST(LogDetHpd, MatchesEigenvalueProduct) {
  RandomStream rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_hpd(rng, 3);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
    const double expected = es.eigenvalues().array().log().sum() / std::log(2.0);
    EXPECT_NEAR(linalg::log_det_hpd(a, LogBase::kTwo), expected, 1e-10 * std::abs(expected) + 1e-12);
  }
}

TEST(MaxEigenvalue, AnalyticCases) {
  EXPECT_NEAR(linalg::max_eigenvalue_hpsd(ComplexMatrix::Identity(3, 3)), 1.0, 1e-8);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  EXPECT_NEAR(linalg::max_eigenvalue_hpsd(d), 3.0, 3e-8);
  ComplexMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  EXPECT_NEAR(linalg::max_eigenvalue_hpsd(m), 3.0, 3e-8);
  ComplexMatrix e = ComplexMatrix::Zero(3, 3);
  e(0, 0) = 1.0;
  e(1, 1) = 2.0;
  e(2, 2) = 3.0;
  EXPECT_NEAR(linalg::max_eigenvalue_hpsd(e), 3.0, 3e-8);
  EXPECT_EQ(linalg::max_eigenvalue_hpsd(ComplexMatrix::Zero(2, 2)), 0.0);
}

TEST(MaxEigenvalue, MatchesEigensolverOnRandomPsd) {
  RandomStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix g = rng.complex_normal_matrix(12, 3);
    const ComplexMatrix m = g * g.adjoint();
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    const double expected = es.eigenvalues().maxCoeff();
    EXPECT_NEAR(linalg::max_eigenvalue_hpsd(m), expected, 1e-8 * expected);
  }
}

TEST(Hadamard, ElementwiseProduct) {
  ComplexMatrix a(2, 2);
  ComplexMatrix b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 5.0, 6.0, 7.0, 8.0;
  ComplexMatrix expected(2, 2);
  expected << 5.0, 12.0, 21.0, 32.0;
  EXPECT_EQ(linalg::hadamard(a, b), expected);
  EXPECT_EQ(linalg::hadamard(a, ComplexMatrix::Zero(2, 2)), ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(linalg::hadamard(a, ComplexMatrix::Ones(2, 2)), a);
  try {
    linalg::hadamard(a, ComplexMatrix::Ones(2, 3));
    FAIL() << "expected DimensionMismatch";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(LinalgProperties, TraceCyclicity) {
  RandomStream rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = rng.complex_normal_matrix(3, 5);
    const ComplexMatrix b = rng.complex_normal_matrix(5, 3);
    const Complex ab = (a * b).trace();
    const Complex ba = (b * a).trace();
    EXPECT_LE(std::abs(ab - ba), 1e-10 * std::max(1.0, std::abs(ab)));
  }
}

TEST(LinalgProperties, PsdQuadraticFormNonNegative) {
  RandomStream rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix g = rng.complex_normal_matrix(4, 2);
    const ComplexMatrix m = g * g.adjoint();
    const ComplexVector v = rng.complex_normal_matrix(4, 1);
    EXPECT_GE(v.dot(m * v).real(), -1e-12 * v.squaredNorm() * m.norm());
  }
}

TEST(LinalgProperties, SymmetrizeRemovesRoundoffAsymmetry) {
  RandomStream rng(8);
  ComplexMatrix a = random_hpd(rng, 3);
  a(0, 1) += Complex(1e-14, 0.0);
  const ComplexMatrix s = linalg::symmetrize(a);
  EXPECT_TRUE(linalg::is_hermitian(s, 0.0));
}

}  // namespace
}  // namespace swipt
