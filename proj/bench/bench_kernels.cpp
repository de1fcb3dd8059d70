#include "schwarz/kernels.hpp"
#include "schwarz/lu.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using schwarz::DenseMatrix;

DenseMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    m(i, i) += static_cast<double>(n);
  }
  return m;
}

void BM_GemmParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz::kernels::gemm(a, b));
}

void BM_GemmSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz::kernels::serial::gemm(a, b));
}

void BM_GemvParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = random_matrix(n, 3);
  const std::vector<double> x(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz::kernels::gemv(a, x));
}

void BM_GemvSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = random_matrix(n, 3);
  const std::vector<double> x(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz::kernels::serial::gemv(a, x));
}

void BM_LuParallel(benchmark::State& state) {
  const DenseMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz::lu_factor(a));
}

void BM_LuSerial(benchmark::State& state) {
  const DenseMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz::lu_factor_serial(a));
}

}  // namespace

BENCHMARK(BM_GemmParallel)->RangeMultiplier(2)->Range(32, 512);
BENCHMARK(BM_GemmSerial)->RangeMultiplier(2)->Range(32, 512);
BENCHMARK(BM_GemvParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_GemvSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_LuParallel)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_LuSerial)->RangeMultiplier(2)->Range(64, 1024);

BENCHMARK_MAIN();
