#include <benchmark/benchmark.h>

#include "qfock/kernel.hpp"
#include "qfock/linalg.hpp"
#include "qfock/nparticle.hpp"
#include "qfock/random.hpp"

namespace {

using namespace qfock;

void BM_Kernel(benchmark::State& state) {
  Rng rng(1);
  StepFunction f = random_step_function(rng, unsigned(state.range(0)));
  StepFunction g = random_step_function(rng, unsigned(state.range(0)));
  CouplingConstant c(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(f, g, c).value);
}
BENCHMARK(BM_Kernel)->Arg(4)->Arg(10);

void BM_InnerRecursive(benchmark::State& state) {
  Rng rng(2);
  StepFunction f = random_step_function(rng);
  StepFunction g = random_step_function(rng);
  CouplingConstant c(1.0);
  unsigned n = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(inner_n_recursive(f, g, c, n).value);
}
BENCHMARK(BM_InnerRecursive)->Arg(8)->Arg(20)->Arg(40);

void BM_InnerPartition(benchmark::State& state) {
  Rng rng(3);
  StepFunction f = random_step_function(rng);
  StepFunction g = random_step_function(rng);
  CouplingConstant c(1.0);
  unsigned n = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(inner_n_partition(f, g, c, n).value);
}
BENCHMARK(BM_InnerPartition)->Arg(8)->Arg(16);

void BM_EnumeratePartitions(benchmark::State& state) {
  unsigned n = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_partitions(n).size());
}
BENCHMARK(BM_EnumeratePartitions)->Arg(12)->Arg(30)->Arg(50);

void BM_EigHermitian(benchmark::State& state) {
  Rng rng(4);
  HermitianMatrix m = random_psd(rng, std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m).values.front());
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(8)->Arg(16);

void BM_SeriesKernel(benchmark::State& state) {
  StepFunction f = StepFunction::constant(0.4);
  CouplingConstant c(1.0);
  unsigned n = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(series_kernel(f, f, c, n).value);
}
BENCHMARK(BM_SeriesKernel)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
