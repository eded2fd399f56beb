#pragma once

// Dense complex linear algebra used by every solver stage.
// Storage is Eigen's default column-major layout.

#include <complex>

#include <Eigen/Dense>

namespace swipt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class LogBase { kTwo, kE };

// Multiplier that converts a natural-log quantity to the given base.
double nats_to(LogBase base);

namespace linalg {

ComplexMatrix hermitian_transpose(const ComplexMatrix& a);

// (A + A^H) / 2
ComplexMatrix symmetrize(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);

// Cholesky factor of a Hermitian positive definite matrix. Throws
// NotPositiveDefinite on failure so the factor can be reused for several
// solves and the log-determinant.
class HpdFactor {
 public:
  explicit HpdFactor(const ComplexMatrix& a);
  ComplexMatrix solve(const ComplexMatrix& b) const;
  ComplexMatrix inverse() const;
  double log_det(LogBase base = LogBase::kE) const;
  Eigen::Index size() const { return llt_.rows(); }

 private:
  Eigen::LLT<ComplexMatrix> llt_;
};

ComplexMatrix solve_hpd(const ComplexMatrix& a, const ComplexMatrix& b);

double log_det_hpd(const ComplexMatrix& m, LogBase base);

struct PowerIterationOptions {
  int max_iterations = 10000;
  double tolerance = 1e-10;
};

// Largest eigenvalue of a Hermitian PSD matrix by power iteration.
double max_eigenvalue_hpsd(const ComplexMatrix& m, const PowerIterationOptions& options = {});

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

double real_trace(const ComplexMatrix& a);

// Re Tr(A^H B) without forming the product.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace linalg
}  // namespace swipt
