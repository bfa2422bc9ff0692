#include "unidec/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "unidec/errors.hpp"
#include "unidec/rng.hpp"

namespace unidec {

std::string to_string(LocalMethod method) {
  switch (method) {
    case LocalMethod::gradient: return "gradient";
    case LocalMethod::simplex: return "simplex";
    case LocalMethod::random_search: return "random";
  }
  return "unknown";
}

LocalMethod parse_local_method(const std::string& name) {
  if (name == "gradient" || name == "sqp") return LocalMethod::gradient;
  if (name == "simplex" || name == "nelder-mead") return LocalMethod::simplex;
  if (name == "random" || name == "random-search") return LocalMethod::random_search;
  throw ConfigError("unknown optimizer method '" + name + "'");
}

void OptimizerConfig::validate() const {
  if (methods.empty()) throw DomainError("optimizer: no methods enabled");
  if (max_iters < 1 || shallow_iters < 0) throw DomainError("optimizer: iteration counts must be positive");
  if (shallow_iters > max_iters) throw DomainError("optimizer: shallow_iters exceeds max_iters");
  if (scale_factors.empty()) throw DomainError("optimizer: scale_factors is empty");
  for (double r : scale_factors) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("optimizer: scale factors must be > 0");
  }
  if (!(tol >= 0.0)) throw DomainError("optimizer: tol must be >= 0");
  if (!(condition_threshold > 1.0)) throw DomainError("optimizer: condition threshold must exceed 1");
}

double l1_objective(std::span<const double> mus, const InterpolationProblem& problem,
                    double condition_threshold) {
  const std::size_t n = problem.size();
  if (n == 0 || mus.size() != n) return kPenalty;
  const Matrix e = interpolation_matrix(problem.lambdas, mus);
  Eigen::PartialPivLU<Matrix> lu(e);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !(1.0 / rcond <= condition_threshold)) return kPenalty;
  ComplexVector rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) rhs(static_cast<Eigen::Index>(i)) = problem.lambdas[i];
  const double value = lu.solve(rhs).cwiseAbs().sum();
  return std::isfinite(value) ? value : kPenalty;
}

double l1_objective_gradient(std::span<const double> mus, const InterpolationProblem& problem,
                             std::span<double> gradient, double condition_threshold) {
  const std::size_t n = problem.size();
  std::fill(gradient.begin(), gradient.end(), 0.0);
  if (n == 0 || mus.size() != n || gradient.size() != n) return kPenalty;
  const Matrix e = interpolation_matrix(problem.lambdas, mus);
  Eigen::PartialPivLU<Matrix> lu(e);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !(1.0 / rcond <= condition_threshold)) return kPenalty;
  const auto dim = static_cast<Eigen::Index>(n);
  const RealVector lambdas = Eigen::Map<const RealVector>(problem.lambdas.data(), dim);
  const ComplexVector c = lu.solve(lambdas.cast<Complex>());
  const double value = c.cwiseAbs().sum();
  if (!std::isfinite(value)) return kPenalty;
  // dc/dmu_k = i c_k E^{-1} diag(lambda) E e_k.
  const Matrix g = lu.solve(lambdas.cast<Complex>().asDiagonal() * e);
  ComplexVector phase(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double a = std::abs(c(j));
    phase(j) = a > 0.0 ? c(j) / a : Complex(0.0);
  }
  const ComplexVector weights = g.transpose() * phase.conjugate();
  for (Eigen::Index k = 0; k < dim; ++k) {
    gradient[static_cast<std::size_t>(k)] = (Complex(0.0, 1.0) * c(k) * weights(k)).real();
  }
  return value;
}

double sqr(double l1, std::span<const double> lambdas) {
  double top = 0.0;
  for (double l : lambdas) top = std::max(top, std::abs(l));
  if (!(top > 0.0)) throw DomainError("sqr: undefined for an all-zero spectrum");
  return l1 / top;
}

namespace {

// Stencil spacing at R = 1: 2 pi / (n * mean eigenvalue gap). Equispaced
// eigenvalues then give nodes exp(-i mu lambda) evenly spread on the circle.
double stencil_step(const InterpolationProblem& problem) {
  const auto n = static_cast<double>(problem.size());
  const double span = problem.lambdas.front() - problem.lambdas.back();
  if (!(span > 0.0)) throw DomainError("optimizer: eigenvalues must be distinct");
  return 2.0 * std::numbers::pi * (n - 1.0) / (n * span);
}

}  // namespace

std::vector<double> initial_points(const InterpolationProblem& problem, double scale_factor) {
  const std::size_t n = problem.size();
  if (n <= 1) return std::vector<double>(n, 0.0);
  const double spacing = scale_factor * stencil_step(problem);
  std::vector<double> mu(n);
  for (std::size_t j = 0; j < n; ++j) {
    mu[j] = (static_cast<double>(j) - 0.5 * static_cast<double>(n - 1)) * spacing;
  }
  return mu;
}

namespace {

bool spread_converged(double best, double worst, double tol) {
  return worst - best <= tol * std::max(1.0, std::abs(best));
}

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const MinimizeOptions& opt) {
  const std::size_t n = x0.size();
  MinimizeResult res;
  const auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  const auto build_simplex = [&](const std::vector<double>& base) {
    pts.assign(n + 1, base);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += 0.25 * opt.scale;
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);
  };
  build_simplex(x0);

  std::vector<std::size_t> order(n + 1);
  const auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  };

  bool restarted = false;
  std::vector<double> centroid(n), trial(n), trial2(n);
  const auto along = [&](double coeff, const std::vector<double>& worst, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + coeff * (worst[i] - centroid[i]);
  };

  sort_simplex();
  double best_so_far = vals[order[0]];
  res.trace.push_back({0, best_so_far});

  while (res.iterations < opt.max_iters) {
    sort_simplex();
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second = order[n > 0 ? n - 1 : 0];
    if (spread_converged(vals[best], vals[worst], opt.tol)) {
      if (restarted) {
        res.converged = true;
        break;
      }
      // One restart around the incumbent guards against a collapsed simplex.
      restarted = true;
      const std::vector<double> base = pts[best];
      const double base_val = vals[best];
      build_simplex(base);
      vals[0] = base_val;
      continue;
    }
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[order[k]][i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    along(-1.0, pts[worst], trial);
    const double f_reflect = eval(trial);
    if (f_reflect < vals[best]) {
      along(-2.0, pts[worst], trial2);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        pts[worst] = trial2;
        vals[worst] = f_expand;
      } else {
        pts[worst] = trial;
        vals[worst] = f_reflect;
      }
    } else if (f_reflect < vals[second]) {
      pts[worst] = trial;
      vals[worst] = f_reflect;
    } else {
      const bool outside = f_reflect < vals[worst];
      along(outside ? -0.5 : 0.5, pts[worst], trial2);
      const double f_contract = eval(trial2);
      if (f_contract < (outside ? f_reflect : vals[worst])) {
        pts[worst] = trial2;
        vals[worst] = f_contract;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          auto& p = pts[order[k]];
          for (std::size_t i = 0; i < n; ++i) p[i] = pts[best][i] + 0.5 * (p[i] - pts[best][i]);
          vals[order[k]] = eval(p);
        }
      }
    }
    best_so_far = std::min(best_so_far, *std::min_element(vals.begin(), vals.end()));
    res.trace.push_back({res.iterations, best_so_far});
  }
  sort_simplex();
  res.x = pts[order[0]];
  res.value = vals[order[0]];
  return res;
}

MinimizeResult gradient_descent(const Objective& f, std::vector<double> x, const MinimizeOptions& opt) {
  const std::size_t n = x.size();
  MinimizeResult res;
  const auto eval = [&](const std::vector<double>& p) {
    ++res.evaluations;
    return f(p);
  };
  double fx = eval(x);
  res.trace.push_back({0, fx});
  const double h = 1e-7 * opt.scale;
  const double min_step = 1e-15 * opt.scale;
  double step = 0.1 * opt.scale;
  std::vector<double> g(n), probe(n), cand(n);

  while (res.iterations < opt.max_iters) {
    ++res.iterations;
    double gnorm = 0.0;
    if (opt.gradient) {
      // Counted as two evaluations: one factorization, n + 1 solves.
      res.evaluations += 2;
      opt.gradient(x, g);
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        probe = x;
        probe[i] = x[i] + h;
        const double up = eval(probe);
        probe[i] = x[i] - h;
        const double down = eval(probe);
        g[i] = (up - down) / (2.0 * h);
      }
    }
    for (double gi : g) gnorm += gi * gi;
    gnorm = std::sqrt(gnorm);
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) {
      res.converged = true;
      res.trace.push_back({res.iterations, fx});
      break;
    }
    double t = step;
    bool accepted = false;
    double f_new = fx;
    while (t >= min_step) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = x[i] - t * g[i] / gnorm;
      f_new = eval(cand);
      if (f_new <= fx - 1e-4 * t * gnorm) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      res.converged = true;
      res.trace.push_back({res.iterations, fx});
      break;
    }
    const double improvement = fx - f_new;
    x = cand;
    fx = f_new;
    step = 2.0 * t;
    res.trace.push_back({res.iterations, fx});
    if (improvement <= opt.tol * std::max(1.0, std::abs(fx))) {
      res.converged = true;
      break;
    }
  }
  res.x = std::move(x);
  res.value = fx;
  return res;
}

MinimizeResult random_points(const Objective& f, const std::vector<double>& center,
                             const MinimizeOptions& opt) {
  MinimizeResult res;
  CounterRng rng(opt.seed, 0);
  res.x = center;
  res.value = f(center);
  res.evaluations = 1;
  res.trace.push_back({0, res.value});
  std::vector<double> p(center.size());
  while (res.iterations < opt.max_iters) {
    ++res.iterations;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = center[i] + opt.scale * (2.0 * rng.uniform() - 1.0);
    }
    const double v = f(p);
    ++res.evaluations;
    if (v < res.value) {
      res.value = v;
      res.x = p;
    }
    res.trace.push_back({res.iterations, res.value});
  }
  res.converged = true;
  return res;
}

double problem_scale(const InterpolationProblem& problem) { return stencil_step(problem); }

OptimizationResult trivial_result(const InterpolationProblem& problem) {
  OptimizationResult out;
  out.mu = {0.0};
  out.l1 = std::abs(problem.lambdas.front());
  out.sqr = sqr(out.l1, problem.lambdas);
  out.trace = {{0, out.l1}};
  out.condition = 1.0;
  out.converged = true;
  return out;
}

void finish(OptimizationResult& out, const InterpolationProblem& problem) {
  out.sqr = sqr(out.l1, problem.lambdas);
  out.condition = condition_estimate(interpolation_matrix(problem.lambdas, out.mu));
  const double n = static_cast<double>(problem.size());
  out.classical_cost = static_cast<double>(out.iterations) * n * n * n;
}

}  // namespace

MinimizeResult minimize(const Objective& objective, std::vector<double> x_init,
                        const MinimizeOptions& options) {
  if (x_init.empty()) throw DimensionError("minimize: empty starting point");
  for (double v : x_init) {
    if (!std::isfinite(v)) throw DomainError("minimize: non-finite starting point");
  }
  if (!(options.scale > 0.0)) throw DomainError("minimize: scale must be positive");
  switch (options.method) {
    case LocalMethod::simplex: return nelder_mead(objective, std::move(x_init), options);
    case LocalMethod::gradient: return gradient_descent(objective, std::move(x_init), options);
    case LocalMethod::random_search: return random_points(objective, x_init, options);
  }
  throw DomainError("minimize: unknown method");
}

OptimizationResult local_minimize(const InterpolationProblem& problem, std::vector<double> mu_init,
                                  LocalMethod method, int max_iters, const OptimizerConfig& config) {
  if (mu_init.size() != problem.size()) {
    throw DimensionError("local_minimize: starting point has wrong length");
  }
  if (problem.size() == 1) return trivial_result(problem);
  const double threshold = config.condition_threshold;
  const Objective f = [&](std::span<const double> mu) { return l1_objective(mu, problem, threshold); };
  MinimizeOptions opt;
  opt.gradient = [&](std::span<const double> mu, std::span<double> g) {
    l1_objective_gradient(mu, problem, g, threshold);
  };
  opt.method = method;
  opt.max_iters = max_iters;
  opt.tol = config.tol;
  opt.scale = problem_scale(problem);
  opt.seed = config.seed;
  MinimizeResult r = minimize(f, std::move(mu_init), opt);

  OptimizationResult out;
  out.mu = std::move(r.x);
  out.l1 = r.value;
  out.trace = std::move(r.trace);
  out.iterations = r.iterations;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  out.method = method;
  if (out.l1 < kPenalty) finish(out, problem);
  return out;
}

OptimizationResult multistart_optimize(const InterpolationProblem& problem,
                                       const OptimizerConfig& config) {
  config.validate();
  if (problem.size() == 0) throw DomainError("multistart_optimize: empty problem");
  if (problem.size() == 1) return trivial_result(problem);

  struct Arm {
    double scale_factor;
    LocalMethod method;
  };
  std::vector<Arm> arms;
  for (double r : config.scale_factors) {
    for (LocalMethod m : config.methods) arms.push_back({r, m});
  }
  std::vector<OptimizationResult> shallow(arms.size());
  const long arm_count = static_cast<long>(arms.size());

#pragma omp parallel for schedule(dynamic)
  for (long a = 0; a < arm_count; ++a) {
    const Arm& arm = arms[static_cast<std::size_t>(a)];
    OptimizerConfig arm_config = config;
    arm_config.seed = derive_seed(config.seed, {static_cast<std::uint64_t>(a)});
    OptimizationResult r = local_minimize(problem, initial_points(problem, arm.scale_factor),
                                          arm.method, config.shallow_iters, arm_config);
    r.scale_factor = arm.scale_factor;
    shallow[static_cast<std::size_t>(a)] = std::move(r);
  }

  std::size_t best = 0;
  long evaluations = 0;
  for (std::size_t a = 0; a < shallow.size(); ++a) {
    evaluations += shallow[a].evaluations;
    if (shallow[a].l1 < shallow[best].l1) best = a;
  }
  if (!(shallow[best].l1 < kPenalty)) {
    throw SingularInterpolationError(
        "multistart_optimize: every start is beyond the condition threshold");
  }

  OptimizerConfig full_config = config;
  full_config.seed = derive_seed(config.seed, {static_cast<std::uint64_t>(arm_count)});
  OptimizationResult full = local_minimize(problem, shallow[best].mu, arms[best].method,
                                           config.max_iters, full_config);
  evaluations += full.evaluations;

  OptimizationResult out = shallow[best];
  const int offset = out.iterations;
  if (full.l1 <= out.l1) {
    out.mu = full.mu;
    out.l1 = full.l1;
    out.converged = full.converged;
  }
  double running = out.trace.empty() ? full.l1 : out.trace.back().objective;
  for (const TracePoint& p : full.trace) {
    running = std::min(running, p.objective);
    out.trace.push_back({offset + p.iteration, running});
  }
  out.iterations = offset + full.iterations;
  out.evaluations = evaluations;
  out.method = arms[best].method;
  out.scale_factor = arms[best].scale_factor;
  finish(out, problem);
  return out;
}

OptimizationResult random_search(const InterpolationProblem& problem, long evaluations,
                                 std::span<const double> scale_factors, std::uint64_t seed,
                                 double condition_threshold) {
  if (problem.size() == 0) throw DomainError("random_search: empty problem");
  if (problem.size() == 1) return trivial_result(problem);
  if (scale_factors.empty()) throw DomainError("random_search: no scale factors");
  if (evaluations < 1) throw DomainError("random_search: budget must be positive");

  const std::size_t n = problem.size();
  // Same extent as the stencil at each R.
  const double unit = 0.5 * static_cast<double>(n - 1) * stencil_step(problem);
  const long per = evaluations / static_cast<long>(scale_factors.size());
  long extra = evaluations % static_cast<long>(scale_factors.size());

  OptimizationResult out;
  out.l1 = std::numeric_limits<double>::infinity();
  std::vector<double> p(n);
  int iteration = 0;
  for (std::size_t r = 0; r < scale_factors.size(); ++r) {
    CounterRng rng(seed, r);
    const long count = per + (extra-- > 0 ? 1 : 0);
    const double half_width = scale_factors[r] * unit;
    for (long s = 0; s < count; ++s) {
      for (double& v : p) v = half_width * (2.0 * rng.uniform() - 1.0);
      const double value = l1_objective(p, problem, condition_threshold);
      ++iteration;
      if (value < out.l1) {
        out.l1 = value;
        out.mu = p;
        out.scale_factor = scale_factors[r];
      }
      out.trace.push_back({iteration, out.l1});
    }
  }
  out.iterations = iteration;
  out.evaluations = iteration;
  out.method = LocalMethod::random_search;
  out.converged = true;
  if (!(out.l1 < kPenalty)) {
    throw SingularInterpolationError("random_search: every sample is beyond the condition threshold");
  }
  finish(out, problem);
  return out;
}

}  // namespace unidec
