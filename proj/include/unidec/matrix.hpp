#pragma once

#include <complex>

#include <Eigen/Dense>

namespace unidec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

// Largest absolute entry.
double max_norm(const Matrix& m);

bool is_square(const Matrix& m);
bool is_finite(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_anti_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_unitary(const Matrix& m, double tol = kUnitaryTol);

// Throws DimensionError unless m is square with finite entries.
void require_square(const Matrix& m, const char* what);

// Hermitian and anti-Hermitian halves of an operator, M = S + A.
struct GeneratorPair {
  Matrix hermitian;       // S = (M + M^dag) / 2
  Matrix anti_hermitian;  // A = (M - M^dag) / 2
  Matrix source;          // M
};

GeneratorPair sa_split(const Matrix& m);

// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted in
// descending order; equal values keep the solver's original order.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
  // V diag(f(lambda)) V^dag for an arbitrary diagonal.
  Matrix synthesize(const ComplexVector& diagonal) const;
  Matrix reconstruct() const;
};

Spectrum hermitian_eig(const Matrix& h, double tol = kHermitianTol);

// exp(scale * H) for H Hermitian or anti-Hermitian, through the
// eigendecomposition. Throws PreconditionError for any other input.
Matrix expm_normal(const Matrix& h, Complex scale, double tol = kHermitianTol);

// exp(scale * H) for a Hermitian H whose spectrum is already known.
Matrix expm_hermitian(const Spectrum& spectrum, Complex scale);

}  // namespace unidec
