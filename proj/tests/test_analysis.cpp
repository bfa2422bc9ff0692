#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "unidec/analysis.hpp"
#include "unidec/errors.hpp"

using namespace unidec;

TEST(Resources, VarianceExamples) {
  EXPECT_NEAR(approximate_total_norm(4, 0.1), 1600.0, 1e-9);
  EXPECT_NEAR(predicted_variance(VarianceModel::approx_scu, {0.0, 4, 0.1, 1000000}), 2.56, 1e-12);
  EXPECT_NEAR(predicted_variance(VarianceModel::exact_scu, {1.0, 1, 0.0, 10000}), 1e-4, 1e-18);
  EXPECT_NEAR(predicted_variance(VarianceModel::approx_lcu, {0.0, 1, 1.0, 4}), 1.0, 1e-15);
  EXPECT_NEAR(predicted_variance(VarianceModel::exact_lcu, {3.0, 1, 0.0, 10}), 0.3, 1e-15);
}

TEST(Resources, ShotRatiosWhenPrecisionHalves) {
  const ResourceInputs in{2.5, 3, 0.0, 1};
  const double e = 1e-2;
  auto ratio = [&](VarianceModel m) {
    return required_shots_real(m, e / 2, in) / required_shots_real(m, e, in);
  };
  EXPECT_NEAR(ratio(VarianceModel::approx_scu), 16.0, 1e-9);
  EXPECT_NEAR(ratio(VarianceModel::approx_lcu), 8.0, 1e-9);
  EXPECT_NEAR(ratio(VarianceModel::exact_scu), 4.0, 1e-9);
  EXPECT_NEAR(ratio(VarianceModel::exact_lcu), 4.0, 1e-9);
}

TEST(Resources, ExponentsAreIntegers) {
  const ResourceInputs in{1.7, 2, 0.0, 1};
  for (double e : {1e-1, 1e-3}) {
    EXPECT_DOUBLE_EQ(shot_scaling_exponent(VarianceModel::approx_scu, e, in), -4.0);
    EXPECT_DOUBLE_EQ(shot_scaling_exponent(VarianceModel::approx_lcu, e, in), -3.0);
    EXPECT_DOUBLE_EQ(shot_scaling_exponent(VarianceModel::exact_scu, e, in), -2.0);
    EXPECT_DOUBLE_EQ(shot_scaling_exponent(VarianceModel::exact_lcu, e, in), -2.0);
  }
}

TEST(Resources, ShotBudgetReachesPrecision) {
  const ResourceModel m{VarianceModel::exact_scu, {3.0, 1, 0.0, 1}};
  const std::uint64_t s = m.shot_budget(0.01);
  EXPECT_EQ(s, 90000u);
  ResourceModel check = m;
  check.inputs.s_tot = s;
  EXPECT_LE(std::sqrt(check.predicted_variance()), 0.01 + 1e-15);
}

TEST(Resources, Errors) {
  EXPECT_THROW(predicted_variance(VarianceModel::exact_scu, {1.0, 1, 0.0, 0}), DomainError);
  EXPECT_THROW(required_shots(VarianceModel::exact_scu, 0.0, {}), DomainError);
  EXPECT_THROW(approximate_total_norm(1, 0.0), DomainError);
  EXPECT_THROW(parse_variance_model("exact"), ConfigError);
  for (auto m : {VarianceModel::exact_scu, VarianceModel::exact_lcu, VarianceModel::approx_scu,
                 VarianceModel::approx_lcu})
    EXPECT_EQ(parse_variance_model(to_string(m)), m);
}

TEST(Stats, SlopeAndMedian) {
  const std::vector<double> x{1, 10, 100}, y{3, 0.3, 0.03};
  EXPECT_NEAR(loglog_slope(x, y), -1.0, 1e-12);
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_THROW(median({}), DomainError);
}

TEST(MseSweep, ExactIsUnbiasedAndApproximateIsBiased) {
  const KrausChannel adc = make_adc({1.0, std::numbers::ln2, 1.0});
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.25;
  rho(1, 1) = 0.75;
  MseSweepConfig c;
  c.epsilons = {0.2};
  c.shot_grid = {100, 10000};
  c.trials = 200;
  c.seed = 3;
  const auto rows = run_mse_sweep(adc, rho, Observable::population(1, 2), c);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.trials, 200);
    if (r.method == "exact") {
      EXPECT_LT(std::abs(r.bias), 1e-10);
      EXPECT_NEAR(r.mse / r.predicted_variance, 1.0, 0.35);
    } else {
      EXPECT_GT(std::abs(r.bias), 1e-4);
      // M0 is Hermitian (one part, l1 = 1/eps); M1 has both parts (l1 = 2/eps).
      EXPECT_NEAR(r.total_norm, 1 / 0.04 + 4 / 0.04, 1e-9);
      EXPECT_LE(r.total_norm, approximate_total_norm(2, 0.2));
    }
  }
  EXPECT_EQ(run_mse_sweep(adc, rho, Observable::population(1, 2), c)[1].mse, rows[1].mse);
  c.trials = 10;
  EXPECT_THROW(run_mse_sweep(adc, rho, Observable::population(1, 2), c), DomainError);
}

TEST(SqrSweep, SmallSweep) {
  SqrSweepConfig c;
  c.dims = {1, 2, 4};
  c.samples_per_dim = 6;
  c.strategies = {SqrStrategy::multistart, SqrStrategy::random, SqrStrategy::simplex};
  const auto rows = run_sqr_sweep(c);
  bool saw_dim1 = false;
  for (const auto& r : rows) {
    EXPECT_GE(r.sqr_min, 1.0 - 1e-9);
    EXPECT_LE(r.sqr_min, r.sqr_median);
    EXPECT_LE(r.sqr_median, r.sqr_max);
    if (r.dim == 1) {
      saw_dim1 = true;
      EXPECT_EQ(r.sqr_max, 1.0);
    }
    if (r.dim == 2 && r.strategy == "multistart") EXPECT_NEAR(r.sqr_median, 1.0, 1e-4);
  }
  EXPECT_TRUE(saw_dim1);
  const auto again = run_sqr_sweep(c);
  ASSERT_EQ(again.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(again[i].sqr_median, rows[i].sqr_median);
}
