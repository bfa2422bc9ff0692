#include "unidec/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "unidec/errors.hpp"

namespace unidec {

double InterpolationProblem::max_abs() const {
  double m = 0.0;
  for (double l : lambdas) m = std::max(m, std::abs(l));
  return m;
}

InterpolationProblem unique_eigenvalues(std::span<const double> spectrum, double tol) {
  if (spectrum.empty()) throw DomainError("unique_eigenvalues: empty spectrum");
  if (!(tol >= 0.0)) throw DomainError("unique_eigenvalues: tolerance must be >= 0");
  std::vector<double> sorted(spectrum.begin(), spectrum.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw DomainError("unique_eigenvalues: non-finite eigenvalue");
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  InterpolationProblem out;
  out.dedupe_tol = tol;
  double sum = sorted.front();
  std::size_t count = 1;
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k - 1] - sorted[k] <= tol) {
      sum += sorted[k];
      ++count;
    } else {
      out.lambdas.push_back(sum / static_cast<double>(count));
      sum = sorted[k];
      count = 1;
    }
  }
  out.lambdas.push_back(sum / static_cast<double>(count));
  return out;
}

Matrix interpolation_matrix(std::span<const double> lambdas, std::span<const double> mus) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  const auto m = static_cast<Eigen::Index>(mus.size());
  Matrix e(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      e(i, j) = std::polar(1.0, -mus[static_cast<std::size_t>(j)] *
                                     lambdas[static_cast<std::size_t>(i)]);
    }
  }
  return e;
}

double condition_estimate(const Matrix& e) {
  Eigen::PartialPivLU<Matrix> lu(e);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !std::isfinite(rcond)) return std::numeric_limits<double>::infinity();
  return 1.0 / rcond;
}

InterpolationSolution solve_exact(const InterpolationProblem& problem, std::span<const double> mus,
                                  double condition_threshold) {
  const std::size_t n = problem.size();
  if (n == 0) throw DomainError("solve_exact: empty problem");
  if (mus.size() != n) {
    throw DimensionError("solve_exact: expected " + std::to_string(n) +
                         " interpolation points, got " + std::to_string(mus.size()));
  }
  const Matrix e = interpolation_matrix(problem.lambdas, mus);
  Eigen::PartialPivLU<Matrix> lu(e);
  const double rcond = lu.rcond();
  const double cond = (rcond > 0.0 && std::isfinite(rcond))
                          ? 1.0 / rcond
                          : std::numeric_limits<double>::infinity();
  if (!(cond <= condition_threshold)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "solve_exact: interpolation matrix condition " << cond << " exceeds " << condition_threshold
        << " at mu = (";
    for (std::size_t j = 0; j < n; ++j) msg << (j ? ", " : "") << mus[j];
    msg << ")";
    throw SingularInterpolationError(msg.str());
  }
  ComplexVector rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = problem.lambdas[i];

  InterpolationSolution out;
  out.coefficients = lu.solve(rhs);
  out.condition = cond;
  out.residual = (e * out.coefficients - rhs).cwiseAbs().maxCoeff();
  return out;
}

double two_point_l1_bound(double lambda0, double lambda1) {
  return 0.5 * (std::abs(lambda0 - lambda1) + std::abs(lambda0 + lambda1));
}

TwoPointSolution analytic_two_point(double lambda0, double lambda1) {
  if (!std::isfinite(lambda0) || !std::isfinite(lambda1)) {
    throw DomainError("analytic_two_point: non-finite eigenvalue");
  }
  const double diff = lambda0 - lambda1;
  if (diff == 0.0) {
    throw DomainError("analytic_two_point: degenerate eigenvalues, deduplicate first");
  }
  const double sum = lambda0 + lambda1;
  // arctan(sqrt|diff/sum|) tends to pi/2 as the sum vanishes.
  const double angle = sum == 0.0 ? std::numbers::pi / 2.0
                                  : std::atan(std::sqrt(std::abs(diff / sum)));
  TwoPointSolution out;
  out.mu_star = 2.0 / diff * angle;

  // exp(-i mu S) = L0(mu) I + L1(mu) S on a two-point spectrum.
  const auto covariants = [&](double mu) {
    const Complex e0 = std::polar(1.0, -mu * lambda0);
    const Complex e1 = std::polar(1.0, -mu * lambda1);
    return std::pair<Complex, Complex>{(lambda0 * e1 - lambda1 * e0) / diff, (e0 - e1) / diff};
  };
  const auto [l0_first, l1_first] = covariants(out.mu_star);
  const auto [l0_second, l1_second] = covariants(-out.mu_star);
  // Require sum_j c_j L0^j = 0 and sum_j c_j L1^j = 1.
  const Complex det = l0_first * l1_second - l0_second * l1_first;
  out.coefficients = {-l0_second / det, l0_first / det};
  out.l1 = std::abs(out.coefficients[0]) + std::abs(out.coefficients[1]);
  return out;
}

}  // namespace unidec
