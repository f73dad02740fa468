// Serial reference vs OpenMP kernels. Arg 0 is the problem size.

#include <benchmark/benchmark.h>

#include <random>

#include "phaseid/clustering.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/features.hpp"
#include "phaseid/metrics.hpp"

using namespace phaseid;

namespace {

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = g(rng);
  return m;
}

Backend backend_of(const benchmark::State& state) { return state.range(1) ? Backend::Parallel : Backend::Serial; }

void BM_Ward(benchmark::State& state) {
  const Points2 p = gaussian(state.range(0), 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_dendrogram(p, backend_of(state)));
}

void BM_Silhouette(benchmark::State& state) {
  const RowMatrix x = gaussian(state.range(0), 2, 2);
  std::vector<int> labels(static_cast<std::size_t>(x.rows()));
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 8);
  for (auto _ : state) benchmark::DoNotOptimize(silhouette(x, labels, 8, backend_of(state)));
}

void BM_Scatter(benchmark::State& state) {
  const Eigen::MatrixXd x = gaussian(state.range(0), 46, 3);
  for (auto _ : state) benchmark::DoNotOptimize(centered_scatter(x, backend_of(state)));
}

void BM_ZScore(benchmark::State& state) {
  const Eigen::MatrixXd x = gaussian(state.range(0), 46, 4);
  for (auto _ : state) {
    Eigen::MatrixXd y = x;
    zscore_columns(y, backend_of(state));
    benchmark::DoNotOptimize(y.data());
  }
}

}  // namespace

BENCHMARK(BM_Ward)->ArgNames({"n", "parallel"})->ArgsProduct({{1000, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Silhouette)->ArgNames({"n", "parallel"})->ArgsProduct({{1000, 5000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scatter)->ArgNames({"n", "parallel"})->ArgsProduct({{5000, 50000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZScore)->ArgNames({"n", "parallel"})->ArgsProduct({{5000, 50000}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
