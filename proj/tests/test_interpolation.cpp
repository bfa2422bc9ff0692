#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "unidec/errors.hpp"
#include "unidec/interpolation.hpp"

using namespace unidec;
using std::numbers::pi;

namespace {

// Direct evaluation of sum_j c_j exp(-i mu_j lambda_i) - lambda_i.
double interpolation_residual(const std::vector<double>& lambdas, const std::vector<double>& mus,
                              const ComplexVector& c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < mus.size(); ++j)
      sum += c(static_cast<Eigen::Index>(j)) * std::exp(Complex(0.0, -mus[j] * lambdas[i]));
    worst = std::max(worst, std::abs(sum - lambdas[i]));
  }
  return worst;
}

}  // namespace

TEST(Interpolation, DedupeExactDuplicates) {
  const std::vector<double> v{1, 1, 0, 0};
  EXPECT_EQ(unique_eigenvalues(v, 1e-8).lambdas, (std::vector<double>{1, 0}));
}

TEST(Interpolation, DedupeSubToleranceCluster) {
  const std::vector<double> v{1.0, 1.0 + 1e-12, 0.5};
  const auto p = unique_eigenvalues(v, 1e-8);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p.lambdas[0], 1.0, 1e-11);
  EXPECT_EQ(p.lambdas[1], 0.5);
}

TEST(Interpolation, DedupePerturbedClusters) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> noise(-1e-10, 1e-10);
  std::vector<double> v;
  for (int k = 0; k < 16; ++k) v.push_back(std::vector<double>{-0.4, 0.2, 0.9}[k % 3] + noise(gen));
  const auto p = unique_eigenvalues(v, 1e-8);
  EXPECT_EQ(p.size(), 3u);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_GT(p.lambdas[i - 1] - p.lambdas[i], 1e-8);
}

TEST(Interpolation, DedupeRejectsEmptyAndNonFinite) {
  EXPECT_THROW(unique_eigenvalues(std::vector<double>{}, 1e-8), DomainError);
  EXPECT_THROW(unique_eigenvalues(std::vector<double>{1.0, std::nan("")}, 1e-8), DomainError);
}

TEST(Interpolation, HandSolvedTwoPoint) {
  const InterpolationProblem p{{1.0, 0.0}, 0.0};
  const std::vector<double> mus{pi / 2, -pi / 2};
  const auto s = solve_exact(p, mus);
  EXPECT_LT(std::abs(s.coefficients(0) - Complex(0.0, 0.5)), 1e-14);
  EXPECT_LT(std::abs(s.coefficients(1) - Complex(0.0, -0.5)), 1e-14);
  EXPECT_NEAR(s.l1(), 1.0, 1e-14);
  EXPECT_LT(s.residual, 1e-14);
}

TEST(Interpolation, SinglePoint) {
  const InterpolationProblem p{{0.7}, 0.0};
  const auto s = solve_exact(p, std::vector<double>{0.0});
  EXPECT_LT(std::abs(s.coefficients(0) - 0.7), 1e-15);
}

TEST(Interpolation, SolveMatchesDirectEvaluation) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3, 5, 8}) {
    std::vector<double> lambdas, mus;
    for (int i = 0; i < n; ++i) lambdas.push_back(u(gen));
    std::sort(lambdas.rbegin(), lambdas.rend());
    for (int j = 0; j < n; ++j) mus.push_back(pi * (j - (n - 1) / 2.0) / n);
    const auto s = solve_exact({lambdas, 0.0}, mus);
    EXPECT_LT(interpolation_residual(lambdas, mus, s.coefficients), 1e-10);
    EXPECT_GE(s.l1(), std::abs(lambdas.front()) - 1e-12);
  }
}

TEST(Interpolation, SingularPointsRaise) {
  const InterpolationProblem p{{1.0, 0.0}, 0.0};
  EXPECT_THROW(solve_exact(p, std::vector<double>{0.3, 0.3}), SingularInterpolationError);
  EXPECT_THROW(solve_exact(p, std::vector<double>{0.0, 2 * pi}), SingularInterpolationError);
}

TEST(Interpolation, AnalyticTwoPointClosedForms) {
  const auto a = analytic_two_point(1.0, 0.0);
  EXPECT_NEAR(a.mu_star, pi / 2, 1e-15);
  EXPECT_NEAR(a.l1, 1.0, 1e-14);
  const auto b = analytic_two_point(1.0, -1.0);
  EXPECT_NEAR(b.mu_star, pi / 2, 1e-15);  // arctan limit pi/2 times 2/(l0-l1)
  EXPECT_NEAR(b.l1, 1.0, 1e-14);
}

TEST(Interpolation, AnalyticCoefficientsInterpolate) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    double l0 = u(gen), l1 = u(gen);
    if (std::abs(l0 - l1) < 1e-3) continue;
    const auto a = analytic_two_point(l0, l1);
    const ComplexVector c = Eigen::Map<const ComplexVector>(a.coefficients.data(), 2);
    EXPECT_LT(interpolation_residual({l0, l1}, {a.mu_star, -a.mu_star}, c), 1e-10);
    EXPECT_NEAR(a.l1, std::max(std::abs(l0), std::abs(l1)), 1e-10);
    EXPECT_NEAR(a.l1, two_point_l1_bound(l0, l1), 1e-12);
    EXPECT_NEAR(c.cwiseAbs().sum(), a.l1, 1e-10);
  }
}

TEST(Interpolation, AnalyticScaleCovariance) {
  for (double a : {0.1, 1.0, 7.5})
    for (double r : {-2.0, -0.5, 0.3, 0.9}) {
      EXPECT_NEAR(analytic_two_point(a, a * r).l1, a * std::max(1.0, std::abs(r)), 1e-12 * a);
    }
}

TEST(Interpolation, AnalyticRejectsEqualEigenvalues) {
  EXPECT_THROW(analytic_two_point(0.5, 0.5), DomainError);
}
