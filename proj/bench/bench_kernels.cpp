#include <benchmark/benchmark.h>

#include "projcalc/index_calculus.hpp"
#include "projcalc/random.hpp"
#include "projcalc/rep_builder.hpp"
#include "projcalc/spectral.hpp"

using namespace projcalc;

namespace {

DenseMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  DenseMatrix m(n, n);
  for (Complex& z : m.data()) z = {rng.gaussian(), rng.gaussian()};
  return m;
}

void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = random_matrix(n, 1);
  const DenseMatrix b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
  state.SetComplexityN(state.range(0));
}

void BM_matmul_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = random_matrix(n, 1);
  const DenseMatrix b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::matmul(a, b));
  state.SetComplexityN(state.range(0));
}

void BM_eig_ql(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix h = random_projection(n, n / 3, 3) - random_projection(n, n / 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigendecompose(h));
}

void BM_eig_jacobi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix h = random_projection(n, n / 3, 3) - random_projection(n, n / 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(serial::jacobi_eigendecompose(h));
}

void BM_index_certificate(benchmark::State& state) {
  RepSpec spec;
  spec.m10 = 3;
  spec.m01 = 1;
  spec.m11 = 2;
  for (int i = 1; i <= 10; ++i) spec.points.push_back({0.28 * i, 2});
  const ProjectionPair pair = random_pair_from_spec(spec, 9);
  for (auto _ : state) benchmark::DoNotOptimize(index_theorem_check(pair, 3));
}

}  // namespace

BENCHMARK(BM_matmul)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_matmul_serial)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_eig_ql)->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(BM_eig_jacobi)->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(BM_index_certificate);

BENCHMARK_MAIN();
