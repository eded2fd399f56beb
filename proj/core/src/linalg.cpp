#include "swipt/linalg.hpp"

#include <cmath>
#include <sstream>

#include "swipt/error.hpp"

namespace swipt {

double nats_to(LogBase base) { return base == LogBase::kTwo ? 1.0 / std::log(2.0) : 1.0; }

namespace linalg {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw SolverError(ErrorCode::kDimensionMismatch, os.str());
  }
}

}  // namespace

ComplexMatrix hermitian_transpose(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix symmetrize(const ComplexMatrix& a) {
  require_square(a, "symmetrize");
  return 0.5 * (a + a.adjoint());
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

HpdFactor::HpdFactor(const ComplexMatrix& a) {
  require_square(a, "HpdFactor");
  if (!is_hermitian(a, 1e-10)) {
    throw SolverError(ErrorCode::kNotPositiveDefinite, "matrix is not Hermitian");
  }
  llt_.compute(0.5 * (a + a.adjoint()));
  if (llt_.info() != Eigen::Success) {
    throw SolverError(ErrorCode::kNotPositiveDefinite, "Cholesky factorization failed");
  }
  const auto diag = llt_.matrixLLT().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (!(diag(i).real() > 0.0) || !std::isfinite(diag(i).real())) {
      throw SolverError(ErrorCode::kNotPositiveDefinite, "non-positive Cholesky pivot");
    }
  }
}

ComplexMatrix HpdFactor::solve(const ComplexMatrix& b) const {
  if (b.rows() != llt_.rows()) {
    std::ostringstream os;
    os << "solve: rhs has " << b.rows() << " rows, factor is " << llt_.rows();
    throw SolverError(ErrorCode::kDimensionMismatch, os.str());
  }
  return llt_.solve(b);
}

ComplexMatrix HpdFactor::inverse() const {
  return llt_.solve(ComplexMatrix::Identity(llt_.rows(), llt_.rows()));
}

double HpdFactor::log_det(LogBase base) const {
  double sum = 0.0;
  const auto diag = llt_.matrixLLT().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) sum += std::log(diag(i).real());
  return 2.0 * sum * nats_to(base);
}

ComplexMatrix solve_hpd(const ComplexMatrix& a, const ComplexMatrix& b) {
  return HpdFactor(a).solve(b);
}

double log_det_hpd(const ComplexMatrix& m, LogBase base) { return HpdFactor(m).log_det(base); }

double max_eigenvalue_hpsd(const ComplexMatrix& m, const PowerIterationOptions& options) {
  require_square(m, "max_eigenvalue_hpsd");
  const Eigen::Index n = m.rows();
  if (n == 0) return 0.0;
  // Deterministic start with a mild index-dependent phase so it is not
  // orthogonal to structured dominant eigenvectors.
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = std::polar(1.0, 0.37 * static_cast<double>(i));
  }
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    ComplexVector w = m * v;
    const double next = v.dot(w).real();
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - lambda) <= options.tolerance * std::abs(next)) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "hadamard: " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw SolverError(ErrorCode::kDimensionMismatch, os.str());
  }
  return a.cwiseProduct(b);
}

double real_trace(const ComplexMatrix& a) { return a.trace().real(); }

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

}  // namespace linalg
}  // namespace swipt
