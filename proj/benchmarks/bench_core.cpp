#include <benchmark/benchmark.h>

#include <eternal/chords.hpp>
#include <eternal/elliptic.hpp>
#include <eternal/evolve.hpp>
#include <eternal/portraits.hpp>
#include <eternal/resonance.hpp>
#include <eternal/spectrum.hpp>

using namespace eternal;

static void BM_LambdaOfH(benchmark::State& state) {
  const double h = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(lambda_of_h(1, h));
}
BENCHMARK(BM_LambdaOfH)->Arg(5)->Arg(30)->Arg(60);

static void BM_Eigen(benchmark::State& state) {
  const auto w = equilibrium_profile(static_cast<int>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(eigen(w).eigenvalues[0]);
}
BENCHMARK(BM_Eigen)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Step(benchmark::State& state) {
  const auto bp = branch_point(1, 0.1);
  const auto w = ComplexField::neumann(bp.profile, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(step(w, 1e-3, bp.lambda).coeffs[0]);
}
BENCHMARK(BM_Step)->Arg(64)->Arg(256)->Arg(1024);

static void BM_Resonance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(identical_resonance_check(n, n).verdict);
}
BENCHMARK(BM_Resonance)->Arg(10)->Arg(22);

static void BM_CountPortraits(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_portraits(d));
}
BENCHMARK(BM_CountPortraits)->Arg(16)->Arg(256);

static void BM_EnumerateDiagrams(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_diagrams(d).size());
}
BENCHMARK(BM_EnumerateDiagrams)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_TraceAndExtract(benchmark::State& state) {
  const auto f = PolyField::cyclotomic(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace_and_extract(f).chord_code);
}
BENCHMARK(BM_TraceAndExtract)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
