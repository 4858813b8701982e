#include <benchmark/benchmark.h>

#include "radbif/branch.hpp"
#include "radbif/shooting.hpp"
#include "radbif/specfun.hpp"
#include "radbif/timemap.hpp"

using namespace radbif;

static void BM_BesselJ0(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j0(x));
    x = x > 50.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_BesselJ0);

static void BM_BesselZeros(benchmark::State& state) {
  for (auto _ : state) {
    for (int k = 1; k <= 10; ++k) benchmark::DoNotOptimize(bessel_j0_prime_zero(k) + bessel_j0_zero(k));
  }
}
BENCHMARK(BM_BesselZeros);

static void BM_PhiBar(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0)) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(phi_bar(s).value);
}
BENCHMARK(BM_PhiBar)->Arg(-999)->Arg(-500)->Arg(1)->Arg(1000)->Arg(1000000);

static void BM_Shoot(benchmark::State& state) {
  const double h0 = static_cast<double>(state.range(0)) / 100.0;
  const ProblemParams p(7.0);
  for (auto _ : state) benchmark::DoNotOptimize(shoot(p, h0).wdot_R);
}
BENCHMARK(BM_Shoot)->Arg(-30)->Arg(1)->Arg(100)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_Integrate(benchmark::State& state) {
  const ProblemParams p(5.7832);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(p, 1000.0).node_count());
}
BENCHMARK(BM_Integrate)->Unit(benchmark::kMicrosecond);

static void BM_SolveAtAmplitude(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_at_amplitude(1, 1, 1.0).lambda);
}
BENCHMARK(BM_SolveAtAmplitude)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
