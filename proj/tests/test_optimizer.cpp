#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "unidec/errors.hpp"
#include "unidec/optimizer.hpp"

using namespace unidec;
using std::numbers::pi;

namespace {

InterpolationProblem random_problem(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(u(gen));
  return unique_eigenvalues(v, 1e-8);
}

}  // namespace

TEST(Optimizer, ObjectiveValues) {
  const InterpolationProblem p{{1.0, 0.0}, 0.0};
  EXPECT_NEAR(l1_objective(std::vector<double>{pi / 2, -pi / 2}, p), 1.0, 1e-14);
  const double off = l1_objective(std::vector<double>{0.1, -0.1}, p);
  EXPECT_GT(off, 1.0);
  EXPECT_EQ(l1_objective(std::vector<double>{0.2, 0.2}, p), kPenalty);
  EXPECT_NEAR(l1_objective(std::vector<double>{0.0}, InterpolationProblem{{1.0}, 0.0}), 1.0, 1e-15);
}

TEST(Optimizer, AnalyticGradientMatchesDifferences) {
  std::mt19937_64 gen(31);
  for (int n : {2, 3, 6}) {
    const auto p = random_problem(n, gen);
    const auto mu = initial_points(p, 0.8);
    std::vector<double> g(p.size());
    const double value = l1_objective_gradient(mu, p, g);
    EXPECT_NEAR(value, l1_objective(mu, p), 1e-12 * value);
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double h = 1e-6;
      auto up = mu, down = mu;
      up[k] += h;
      down[k] -= h;
      const double fd = (l1_objective(up, p) - l1_objective(down, p)) / (2 * h);
      EXPECT_NEAR(g[k], fd, 1e-5 * std::max(1.0, std::abs(fd))) << n << " " << k;
    }
  }
  std::vector<double> g(2);
  EXPECT_EQ(l1_objective_gradient(std::vector<double>{0.2, 0.2}, {{1.0, 0.0}, 0.0}, g), kPenalty);
  EXPECT_EQ(g, (std::vector<double>{0.0, 0.0}));
}

TEST(Optimizer, SqrDefinition) {
  EXPECT_EQ(sqr(1.0, std::vector<double>{1.0, 0.0}), 1.0);
  EXPECT_EQ(sqr(2.0, std::vector<double>{1.0, 0.0}), 2.0);
  EXPECT_EQ(sqr(2.0, std::vector<double>{-4.0, 1.0}), 0.5);
  EXPECT_THROW(sqr(1.0, std::vector<double>{0.0, 0.0}), DomainError);
}

TEST(Optimizer, ConfigValidation) {
  OptimizerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.scale_factors = {};
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.max_iters = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.methods = {};
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(parse_local_method("bfgs"), ConfigError);
  EXPECT_EQ(parse_local_method(to_string(LocalMethod::gradient)), LocalMethod::gradient);
}

TEST(Optimizer, InitialPointsStencil) {
  const InterpolationProblem p{{2.0, 1.0, -0.5}, 0.0};
  const auto mu = initial_points(p, 1.0);
  ASSERT_EQ(mu.size(), 3u);
  const double h = 2 * pi * 2 / (3 * 2.5);
  EXPECT_NEAR(mu[0], -h, 1e-15);
  EXPECT_NEAR(mu[1], 0.0, 1e-15);
  EXPECT_NEAR(mu[2], h, 1e-15);
  EXPECT_NEAR(initial_points(p, 2.0)[2], 2 * h, 1e-15);
}

TEST(Optimizer, MinimizeQuadraticAllMethods) {
  const Objective f = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 3.0 * (x[1] + 0.5) * (x[1] + 0.5);
  };
  for (LocalMethod m : {LocalMethod::simplex, LocalMethod::gradient}) {
    const auto r = minimize(f, {0.0, 0.0}, {m, 2000, 1e-14, 1.0, 0});
    EXPECT_NEAR(r.x[0], 1.0, 1e-4) << to_string(m);
    EXPECT_NEAR(r.x[1], -0.5, 1e-4) << to_string(m);
  }
  const auto r = minimize(f, {0.0, 0.0}, {LocalMethod::random_search, 5000, 0.0, 2.0, 1});
  EXPECT_LT(r.value, 0.05);
}

TEST(Optimizer, TraceIsMonotone) {
  std::mt19937_64 gen(11);
  const auto p = random_problem(4, gen);
  for (LocalMethod m : {LocalMethod::simplex, LocalMethod::gradient, LocalMethod::random_search}) {
    const auto init = initial_points(p, 1.0);
    const double start = l1_objective(init, p);
    const auto r = local_minimize(p, init, m, 300, {});
    EXPECT_LE(r.l1, start) << to_string(m);
    for (std::size_t k = 1; k < r.trace.size(); ++k)
      EXPECT_LE(r.trace[k].objective, r.trace[k - 1].objective);
  }
}

TEST(Optimizer, TwoPointConvergesToBound) {
  const InterpolationProblem p{{1.0, 0.0}, 0.0};
  for (LocalMethod m : {LocalMethod::simplex, LocalMethod::gradient}) {
    const auto r = local_minimize(p, {1.0, -1.0}, m, 500, {});
    EXPECT_NEAR(r.l1, 1.0, 1e-6) << to_string(m);
  }
}

TEST(Optimizer, AlreadyOptimalStays) {
  const InterpolationProblem p{{1.0, 0.0}, 0.0};
  const auto r = local_minimize(p, {pi / 2, -pi / 2}, LocalMethod::simplex, 200, {});
  EXPECT_NEAR(r.l1, 1.0, 1e-13);
}

TEST(Optimizer, MultistartSaturatesTwoPoint) {
  for (double R : {0.5, 1.0, 2.0}) {
    OptimizerConfig c;
    c.scale_factors = {R};
    const auto r = multistart_optimize({{1.0, 0.0}, 0.0}, c);
    EXPECT_NEAR(r.sqr, 1.0, 1e-6) << R;
  }
}

TEST(Optimizer, SinglePointIsTrivial) {
  const auto r = multistart_optimize({{-0.6}, 0.0}, {});
  ASSERT_EQ(r.mu.size(), 1u);
  EXPECT_EQ(r.mu[0], 0.0);
  EXPECT_EQ(r.sqr, 1.0);
}

TEST(Optimizer, MultistartBeatsEqualBudgetRandomSearch) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_problem(8, gen);
    OptimizerConfig c;
    c.seed = 100 + trial;
    const auto best = multistart_optimize(p, c);
    const auto baseline = random_search(p, best.evaluations, c.scale_factors, c.seed);
    EXPECT_LE(best.l1, baseline.l1 + 1e-12);
    EXPECT_GE(best.sqr, 1.0 - 1e-9);
  }
}

TEST(Optimizer, MultistartDeterministic) {
  std::mt19937_64 gen(17);
  const auto p = random_problem(6, gen);
  OptimizerConfig c;
  c.seed = 5;
  const auto a = multistart_optimize(p, c);
  const auto b = multistart_optimize(p, c);
  EXPECT_EQ(a.mu, b.mu);
  EXPECT_EQ(a.l1, b.l1);
}

TEST(Optimizer, ScaleCovariance) {
  std::mt19937_64 gen(19);
  const auto p = random_problem(3, gen);
  const double a = 37.0;
  InterpolationProblem scaled = p;
  for (double& l : scaled.lambdas) l *= a;
  const auto r1 = multistart_optimize(p, {});
  const auto r2 = multistart_optimize(scaled, {});
  EXPECT_NEAR(r1.sqr, r2.sqr, 1e-6);
}

TEST(Optimizer, LandscapeIsNotConvex) {
  // Local minimizers from different starts are separated by higher ground,
  // which a convex objective would not allow.
  const InterpolationProblem p{{1.0, 0.6, 0.3, -0.2}, 0.0};
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  std::vector<OptimizationResult> minima;
  for (int start = 0; start < 10; ++start) {
    std::vector<double> init(4);
    for (double& m : init) m = u(gen);
    const auto r = local_minimize(p, init, LocalMethod::simplex, 2000, {});
    if (r.l1 < kPenalty) minima.push_back(r);
  }
  ASSERT_GE(minima.size(), 2u);
  bool violated = false;
  for (std::size_t a = 0; a < minima.size() && !violated; ++a)
    for (std::size_t b = a + 1; b < minima.size() && !violated; ++b) {
      std::vector<double> mid(4);
      for (int k = 0; k < 4; ++k) mid[k] = 0.5 * (minima[a].mu[k] + minima[b].mu[k]);
      violated = l1_objective(mid, p) > std::max(minima[a].l1, minima[b].l1) + 1e-6;
    }
  EXPECT_TRUE(violated);
}

TEST(Optimizer, RandomSearchBudget) {
  std::mt19937_64 gen(29);
  const auto p = random_problem(4, gen);
  const std::vector<double> scales{0.5, 1.0, 2.0};
  const auto r = random_search(p, 300, scales, 3);
  EXPECT_EQ(r.evaluations, 300);
  EXPECT_GE(r.sqr, 1.0 - 1e-9);
  EXPECT_EQ(r.l1, random_search(p, 300, scales, 3).l1);
}
