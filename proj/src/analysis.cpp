#include "unidec/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "omp_error.hpp"
#include "unidec/errors.hpp"
#include "unidec/rng.hpp"

namespace unidec {

std::string to_string(VarianceModel model) {
  switch (model) {
    case VarianceModel::exact_scu: return "exact-scu";
    case VarianceModel::exact_lcu: return "exact-lcu";
    case VarianceModel::approx_scu: return "approx-scu";
    case VarianceModel::approx_lcu: return "approx-lcu";
  }
  return "unknown";
}

VarianceModel parse_variance_model(const std::string& name) {
  if (name == "exact-scu") return VarianceModel::exact_scu;
  if (name == "exact-lcu") return VarianceModel::exact_lcu;
  if (name == "approx-scu") return VarianceModel::approx_scu;
  if (name == "approx-lcu") return VarianceModel::approx_lcu;
  throw ConfigError("unknown variance model '" + name + "'");
}

double approximate_total_norm(std::size_t kraus_count, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("approximate model: epsilon must be positive");
  return 4.0 * static_cast<double>(kraus_count) / (epsilon * epsilon);
}

namespace {

bool is_approximate(VarianceModel m) {
  return m == VarianceModel::approx_scu || m == VarianceModel::approx_lcu;
}

double approximate_norm_sq_eps(std::size_t kraus_count, double epsilon_sq) {
  if (!(epsilon_sq > 0.0)) throw DomainError("approximate model: epsilon must be positive");
  return 4.0 * static_cast<double>(kraus_count) / epsilon_sq;
}

// Variance times s_tot. Approximate models take epsilon^2 directly so that
// epsilon^2 = E holds exactly in required_shots.
double variance_numerator(VarianceModel model, const ResourceInputs& in, double epsilon_sq) {
  switch (model) {
    case VarianceModel::exact_scu: return in.total_norm * in.total_norm;
    case VarianceModel::exact_lcu: return in.total_norm;
    case VarianceModel::approx_scu: {
      const double l = approximate_norm_sq_eps(in.kraus_count, epsilon_sq);
      return l * l;
    }
    case VarianceModel::approx_lcu: return approximate_norm_sq_eps(in.kraus_count, epsilon_sq);
  }
  return 0.0;
}

}  // namespace

double predicted_variance(VarianceModel model, const ResourceInputs& in) {
  if (in.s_tot == 0) throw DomainError("predicted_variance: s_tot must be >= 1");
  if (!is_approximate(model) && !(in.total_norm >= 0.0)) {
    throw DomainError("predicted_variance: L must be >= 0");
  }
  return variance_numerator(model, in, in.epsilon * in.epsilon) / static_cast<double>(in.s_tot);
}

double required_shots_real(VarianceModel model, double precision, const ResourceInputs& in) {
  if (!(precision > 0.0)) throw DomainError("required_shots: precision must be positive");
  const double epsilon_sq = is_approximate(model) ? precision : in.epsilon * in.epsilon;
  return variance_numerator(model, in, epsilon_sq) / (precision * precision);
}

std::uint64_t required_shots(VarianceModel model, double precision, const ResourceInputs& in) {
  return static_cast<std::uint64_t>(std::ceil(required_shots_real(model, precision, in)));
}

double shot_scaling_exponent(VarianceModel model, double precision, const ResourceInputs& in) {
  const double coarse = required_shots_real(model, precision, in);
  const double fine = required_shots_real(model, 0.5 * precision, in);
  return -std::log2(fine / coarse);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need >= 2 paired points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<MseRow> run_mse_sweep(const KrausChannel& channel, const Matrix& rho0,
                                  const Observable& obs, const MseSweepConfig& config) {
  if (config.trials < 30) throw DomainError("run_mse_sweep: at least 30 trials per cell required");
  if (config.shot_grid.empty()) throw DomainError("run_mse_sweep: empty shot grid");
  const double truth = (obs.matrix() * apply_channel_exact(channel, rho0)).trace().real();

  struct Arm {
    ExpansionMethod method;
    double epsilon;
  };
  std::vector<Arm> arms;
  if (config.include_exact) arms.push_back({ExpansionMethod::exact, std::nan("")});
  for (double eps : config.epsilons) arms.push_back({ExpansionMethod::approximate, eps});

  std::vector<MseRow> rows;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    DecomposeOptions options = config.decompose;
    options.method = arms[a].method;
    if (arms[a].method == ExpansionMethod::approximate) options.epsilon = arms[a].epsilon;
    const TermTable table = build_term_table(decompose_channel(channel, options));
    const auto dists = outcome_distributions(table, rho0, obs, config.exec);
    const EstimatorModel model = estimator_model(table, dists, obs);
    const double bias = exact_expectation(table, rho0, obs, config.exec) - truth;

    for (std::size_t s = 0; s < config.shot_grid.size(); ++s) {
      const std::uint64_t shots = config.shot_grid[s];
      std::vector<std::uint64_t> seeds(static_cast<std::size_t>(config.trials));
      for (std::size_t t = 0; t < seeds.size(); ++t) {
        seeds[t] = derive_seed(config.seed, {a, s, t});
      }
      const auto estimates = estimate_batch(table, dists, model, shots, seeds, config.exec);
      double sq = 0.0;
      for (const auto& e : estimates) sq += (e.mean - truth) * (e.mean - truth);

      MseRow row;
      row.method = to_string(arms[a].method);
      row.epsilon = arms[a].epsilon;
      row.total_norm = table.total_norm;
      row.s_tot = shots;
      row.trials = config.trials;
      row.mse = sq / static_cast<double>(estimates.size());
      row.bias = bias;
      row.predicted_variance = model.predicted_variance(shots);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string to_string(SqrStrategy s) {
  switch (s) {
    case SqrStrategy::multistart: return "multistart";
    case SqrStrategy::simplex: return "simplex";
    case SqrStrategy::gradient: return "gradient";
    case SqrStrategy::random: return "random";
  }
  return "unknown";
}

SqrStrategy parse_sqr_strategy(const std::string& name) {
  if (name == "multistart") return SqrStrategy::multistart;
  if (name == "simplex") return SqrStrategy::simplex;
  if (name == "gradient") return SqrStrategy::gradient;
  if (name == "random") return SqrStrategy::random;
  throw ConfigError("unknown sqr strategy '" + name + "'");
}

namespace {

struct Cell {
  std::string strategy;
  double scale_factor;
  std::vector<double> sqr;
  std::vector<double> evaluations;
};

}  // namespace

std::vector<SqrRow> run_sqr_sweep(const SqrSweepConfig& config) {
  config.optimizer.validate();
  if (config.samples_per_dim < 1) throw DomainError("run_sqr_sweep: samples_per_dim must be >= 1");
  const auto& factors = config.optimizer.scale_factors;
  const auto wants = [&](SqrStrategy s) {
    return std::find(config.strategies.begin(), config.strategies.end(), s) !=
           config.strategies.end();
  };
  const double nan = std::nan("");

  std::vector<SqrRow> rows;
  for (std::size_t d = 0; d < config.dims.size(); ++d) {
    const int dim = config.dims[d];
    if (dim < 1) throw DomainError("run_sqr_sweep: dimensions must be >= 1");

    // Column layout of one sample's results.
    std::vector<std::pair<std::string, double>> layout;
    layout.emplace_back("multistart", nan);
    if (wants(SqrStrategy::random)) layout.emplace_back("random", nan);
    for (SqrStrategy s : {SqrStrategy::simplex, SqrStrategy::gradient, SqrStrategy::random}) {
      if (!wants(s)) continue;
      for (double r : factors) layout.emplace_back(to_string(s), r);
    }
    const std::size_t samples = static_cast<std::size_t>(config.samples_per_dim);
    std::vector<std::vector<double>> sqr_values(samples, std::vector<double>(layout.size()));
    std::vector<std::vector<double>> evals(samples, std::vector<double>(layout.size()));

    detail::ErrorSlot error;
#pragma omp parallel for schedule(dynamic)
    for (long si = 0; si < static_cast<long>(samples); ++si) {
      try {
        const auto sample = static_cast<std::size_t>(si);
        const std::uint64_t sample_seed = derive_seed(config.seed, {d, sample});
        CounterRng rng(sample_seed, 0);
        std::vector<double> lambdas(static_cast<std::size_t>(dim));
        for (double& l : lambdas) l = rng.uniform();
        const double top = *std::max_element(lambdas.begin(), lambdas.end());
        const InterpolationProblem problem = unique_eigenvalues(lambdas, kDedupeRelTol * top);

        OptimizerConfig opt = config.optimizer;
        opt.seed = derive_seed(sample_seed, {1});
        const OptimizationResult multi = multistart_optimize(problem, opt);
        const long budget = std::max<long>(multi.evaluations, 1);
        // A baseline that never lands on an admissible point scores infinity.
        const auto baseline = [&](std::span<const double> scales, std::uint64_t seed) {
          try {
            return random_search(problem, budget, scales, seed, opt.condition_threshold);
          } catch (const SingularInterpolationError&) {
            OptimizationResult failed;
            failed.sqr = std::numeric_limits<double>::infinity();
            failed.evaluations = budget;
            return failed;
          }
        };
        std::size_t col = 0;
        sqr_values[sample][col] = multi.sqr;
        evals[sample][col++] = static_cast<double>(multi.evaluations);
        if (wants(SqrStrategy::random)) {
          const auto r = baseline(factors, derive_seed(sample_seed, {2}));
          sqr_values[sample][col] = r.sqr;
          evals[sample][col++] = static_cast<double>(r.evaluations);
        }
        for (SqrStrategy s : {SqrStrategy::simplex, SqrStrategy::gradient, SqrStrategy::random}) {
          if (!wants(s)) continue;
          for (std::size_t ri = 0; ri < factors.size(); ++ri) {
            OptimizationResult r;
            if (s == SqrStrategy::random) {
              r = baseline(std::span<const double>(&factors[ri], 1), derive_seed(sample_seed, {3, ri}));
            } else {
              const LocalMethod m =
                  s == SqrStrategy::simplex ? LocalMethod::simplex : LocalMethod::gradient;
              r = local_minimize(problem, initial_points(problem, factors[ri]), m, opt.max_iters, opt);
              if (!(r.l1 < kPenalty)) r.sqr = std::numeric_limits<double>::infinity();
            }
            sqr_values[sample][col] = r.sqr;
            evals[sample][col++] = static_cast<double>(r.evaluations);
          }
        }
      } catch (...) {
        error.capture();
      }
    }
    error.rethrow();

    for (std::size_t c = 0; c < layout.size(); ++c) {
      if (layout[c].first == "multistart" && !wants(SqrStrategy::multistart)) continue;
      std::vector<double> column(samples), ev(samples);
      for (std::size_t s = 0; s < samples; ++s) {
        column[s] = sqr_values[s][c];
        ev[s] = evals[s][c];
      }
      SqrRow row;
      row.dim = dim;
      row.strategy = layout[c].first;
      row.scale_factor = layout[c].second;
      row.samples = static_cast<int>(samples);
      row.sqr_min = *std::min_element(column.begin(), column.end());
      row.sqr_max = *std::max_element(column.begin(), column.end());
      row.sqr_median = median(column);
      double total = 0.0;
      for (double e : ev) total += e;
      row.mean_evaluations = total / static_cast<double>(samples);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace unidec
