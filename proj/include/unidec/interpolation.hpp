#pragma once

#include <array>
#include <span>
#include <vector>

#include "unidec/matrix.hpp"

namespace unidec {

inline constexpr double kConditionThreshold = 1e12;
inline constexpr double kDedupeRelTol = 1e-8;

// Distinct eigenvalues of a generator, descending, pairwise separated by
// more than dedupe_tol.
struct InterpolationProblem {
  std::vector<double> lambdas;
  double dedupe_tol = 0.0;

  std::size_t size() const { return lambdas.size(); }
  double max_abs() const;
};

// Clusters values whose consecutive gaps are <= tol and represents each
// cluster by its mean. Throws DomainError on empty or non-finite input.
InterpolationProblem unique_eigenvalues(std::span<const double> spectrum, double tol);

// E(mu)_{ij} = exp(-i mu_j lambda_i).
Matrix interpolation_matrix(std::span<const double> lambdas, std::span<const double> mus);

// Cheap 1-norm condition estimate of E, infinity if LU breaks down.
double condition_estimate(const Matrix& e);

struct InterpolationSolution {
  ComplexVector coefficients;
  double condition = 0.0;
  double residual = 0.0;  // max_i |sum_j c_j e^{-i mu_j lambda_i} - lambda_i|

  double l1() const { return coefficients.cwiseAbs().sum(); }
};

// Solves lambda_i = sum_j c_j exp(-i mu_j lambda_i). Throws
// SingularInterpolationError when the condition estimate exceeds the threshold.
InterpolationSolution solve_exact(const InterpolationProblem& problem, std::span<const double> mus,
                                  double condition_threshold = kConditionThreshold);

// Closed-form optimum for two distinct eigenvalues with antisymmetric points
// mu_0 = -mu_1 = mu_star. Coefficients come from the two Frobenius
// covariants of exp(-i mu S).
struct TwoPointSolution {
  double mu_star = 0.0;
  std::array<Complex, 2> coefficients{};
  double l1 = 0.0;
};

TwoPointSolution analytic_two_point(double lambda0, double lambda1);

// 1/2 (|l0 - l1| + |l0 + l1|).
double two_point_l1_bound(double lambda0, double lambda1);

}  // namespace unidec
