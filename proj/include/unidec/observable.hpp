#pragma once

#include <vector>

#include "unidec/matrix.hpp"

namespace unidec {

// Hermitian observable with its spectral decomposition O = sum_m a_m P_m
// cached, levels a_m distinct and descending.
class Observable {
 public:
  explicit Observable(Matrix matrix, double tol = kHermitianTol);

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const std::vector<double>& levels() const { return levels_; }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  // O^2 = I within tolerance, so every single-shot outcome is +-1.
  bool involutory() const { return involutory_; }
  double max_abs_eigenvalue() const;

  static Observable pauli_x();
  static Observable pauli_y();
  static Observable pauli_z();
  // |k><k| in dimension dim.
  static Observable population(Eigen::Index k, Eigen::Index dim);

 private:
  Matrix matrix_;
  std::vector<double> levels_;
  std::vector<Matrix> projectors_;
  bool involutory_ = false;
};

}  // namespace unidec
