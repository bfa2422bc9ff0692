#include "unidec/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "unidec/errors.hpp"

namespace unidec {

double max_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_square(const Matrix& m) { return m.rows() == m.cols(); }

bool is_finite(const Matrix& m) { return m.allFinite(); }

bool is_hermitian(const Matrix& m, double tol) {
  return is_square(m) && max_norm(m - m.adjoint()) <= tol;
}

bool is_anti_hermitian(const Matrix& m, double tol) {
  return is_square(m) && max_norm(m + m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (!is_square(m)) return false;
  return max_norm(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

void require_square(const Matrix& m, const char* what) {
  if (!is_square(m) || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!is_finite(m)) {
    throw DimensionError(std::string(what) + ": matrix has non-finite entries");
  }
}

GeneratorPair sa_split(const Matrix& m) {
  require_square(m, "sa_split");
  const Matrix adj = m.adjoint();
  return GeneratorPair{0.5 * (m + adj), 0.5 * (m - adj), m};
}

Matrix Spectrum::synthesize(const ComplexVector& diagonal) const {
  return eigenvectors * diagonal.asDiagonal() * eigenvectors.adjoint();
}

Matrix Spectrum::reconstruct() const {
  return synthesize(eigenvalues.cast<Complex>());
}

Spectrum hermitian_eig(const Matrix& h, double tol) {
  require_square(h, "hermitian_eig");
  if (!is_hermitian(h, tol)) {
    throw PreconditionError("hermitian_eig: input is not Hermitian (residual " +
                            std::to_string(max_norm(h - h.adjoint())) + ")");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: eigensolver did not converge");
  }
  const RealVector& values = solver.eigenvalues();
  const Eigen::Index n = values.size();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });

  Spectrum out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = values(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

Matrix expm_hermitian(const Spectrum& spectrum, Complex scale) {
  const ComplexVector diag =
      (scale * spectrum.eigenvalues.cast<Complex>().array()).exp().matrix();
  return spectrum.synthesize(diag);
}

Matrix expm_normal(const Matrix& h, Complex scale, double tol) {
  require_square(h, "expm_normal");
  if (is_hermitian(h, tol)) {
    return expm_hermitian(hermitian_eig(h, tol), scale);
  }
  if (is_anti_hermitian(h, tol)) {
    // A = -i (iA) with iA Hermitian, so exp(s A) = exp(-i s (iA)).
    const Complex i(0.0, 1.0);
    return expm_hermitian(hermitian_eig(i * h, tol), -i * scale);
  }
  throw PreconditionError("expm_normal: input is neither Hermitian nor anti-Hermitian");
}

}  // namespace unidec
