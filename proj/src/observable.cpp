#include "unidec/observable.hpp"

#include <cmath>

#include "unidec/errors.hpp"

namespace unidec {

namespace {
constexpr double kLevelTol = 1e-9;
}

Observable::Observable(Matrix matrix, double tol) : matrix_(std::move(matrix)) {
  require_square(matrix_, "Observable");
  if (!is_hermitian(matrix_, tol)) throw PreconditionError("Observable: matrix is not Hermitian");
  const Spectrum spectrum = hermitian_eig(matrix_, tol);
  const Eigen::Index n = spectrum.dim();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double value = spectrum.eigenvalues(k);
    const auto v = spectrum.eigenvectors.col(k);
    if (levels_.empty() || levels_.back() - value > kLevelTol) {
      levels_.push_back(value);
      projectors_.push_back(v * v.adjoint());
    } else {
      projectors_.back() += v * v.adjoint();
    }
  }
  involutory_ = max_norm(matrix_ * matrix_ - Matrix::Identity(n, n)) <= tol;
}

double Observable::max_abs_eigenvalue() const {
  return std::max(std::abs(levels_.front()), std::abs(levels_.back()));
}

Observable Observable::pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return Observable(m);
}

Observable Observable::pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return Observable(m);
}

Observable Observable::pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return Observable(m);
}

Observable Observable::population(Eigen::Index k, Eigen::Index dim) {
  if (k < 0 || k >= dim) throw DimensionError("Observable::population: index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return Observable(m);
}

}  // namespace unidec
