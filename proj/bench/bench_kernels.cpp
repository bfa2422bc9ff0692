#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "unidec/channels.hpp"
#include "unidec/decomposer.hpp"
#include "unidec/kernels.hpp"
#include "unidec/rng.hpp"

namespace {

using namespace unidec;

// Random CPTP channel from the column blocks of a random isometry.
KrausChannel random_channel(Eigen::Index dim, int kraus, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Matrix g(dim * kraus, dim);
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex(normal(gen), normal(gen));
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(dim * kraus, dim);
  std::vector<Matrix> ops;
  for (int k = 0; k < kraus; ++k) ops.push_back(q.block(k * dim, 0, dim, dim));
  return KrausChannel(ops, "random");
}

struct Fixture {
  explicit Fixture(Eigen::Index dim) {
    const KrausChannel channel = random_channel(dim, 2, 7);
    table = build_term_table(decompose_channel(channel, {}));
    rho0 = Matrix::Zero(dim, dim);
    rho0(0, 0) = 1.0;
    obs = Observable::population(0, dim);
    dists = kernels::serial::distributions(table, rho0, obs);
    model = estimator_model(table, dists, obs);
    for (std::uint64_t s = 0; s < 64; ++s) seeds.push_back(derive_seed(11, {s}));
  }
  TermTable table;
  Matrix rho0;
  Observable obs = Observable::population(0, 2);
  std::vector<OutcomeDistribution> dists;
  EstimatorModel model;
  std::vector<std::uint64_t> seeds;
};

const Fixture& fixture(Eigen::Index dim) {
  static std::map<Eigen::Index, Fixture> cache;
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, Fixture(dim)).first;
  return it->second;
}

template <auto Kernel>
void BM_distributions(benchmark::State& state) {
  const Fixture& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.table, f.rho0, f.obs));
}

template <auto Kernel>
void BM_reconstruct(benchmark::State& state) {
  const Fixture& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.table, f.rho0));
}

template <auto Kernel>
void BM_batch(benchmark::State& state) {
  const Fixture& f = fixture(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.table, f.dists, f.model, 1 << 14, f.seeds));
}

}  // namespace

BENCHMARK(BM_distributions<unidec::kernels::serial::distributions>)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_distributions<unidec::kernels::omp::distributions>)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_reconstruct<unidec::kernels::serial::reconstruct>)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_reconstruct<unidec::kernels::omp::reconstruct>)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_batch<unidec::kernels::serial::batch>)->Arg(4)->Arg(8);
BENCHMARK(BM_batch<unidec::kernels::omp::batch>)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
