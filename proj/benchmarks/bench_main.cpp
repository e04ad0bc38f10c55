#include <benchmark/benchmark.h>

#include "smrt/smrt.hpp"

using namespace smrt;

static void BM_BesselJ(benchmark::State& state) {
  const Order p(static_cast<double>(state.range(0)) + 0.5);
  double x = 0.0;
  for (auto _ : state) {
    x = x > 80.0 ? 0.01 : x + 0.37;
    benchmark::DoNotOptimize(bessel_j(p, x));
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(8)->Arg(30);

static void BM_BesselZeros(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bessel_zeros(Order(8.5), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BesselZeros)->Arg(10)->Arg(40);

static void BM_SphericalMean(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const Phantom ph = dim == 2 ? phantoms::three_bump_2d() : phantoms::three_bump_3d();
  const SphericalMeanEvaluator eval(48);
  const Point c = dim == 2 ? Point{0.6, 0.8, 0.0} : Point{0.0, 0.6, 0.8};
  double t = 0.0;
  for (auto _ : state) {
    t = t > 1.8 ? 0.05 : t + 0.013;
    benchmark::DoNotOptimize(eval(ph, c, t));
  }
}
BENCHMARK(BM_SphericalMean)->Arg(2)->Arg(3);

static void BM_Forward2D(benchmark::State& state) {
  const Phantom ph = phantoms::three_bump_2d();
  const auto centers = CenterGrid::circle(64);
  const auto t = uniform_grid(257, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(ph, centers, t));
}
BENCHMARK(BM_Forward2D)->Unit(benchmark::kMillisecond);

namespace {

const HarmonicSpectrum& spectrum_2d() {
  static const HarmonicSpectrum s =
      harmonic_decompose(forward_transform(phantoms::three_bump_2d(), CenterGrid::circle(128), uniform_grid(512, 2.0)), 8);
  return s;
}

}  // namespace

static void BM_SeriesInversion(benchmark::State& state) {
  const auto& s = spectrum_2d();
  for (auto _ : state) benchmark::DoNotOptimize(series_inversion(s));
}
BENCHMARK(BM_SeriesInversion)->Unit(benchmark::kMillisecond);

static void BM_TimeReversal(benchmark::State& state) {
  const auto& s = spectrum_2d();
  for (auto _ : state) benchmark::DoNotOptimize(time_reversal(s));
}
BENCHMARK(BM_TimeReversal)->Unit(benchmark::kMillisecond);

static void BM_BesselZeroCheck(benchmark::State& state) {
  const auto& s = spectrum_2d();
  for (auto _ : state) benchmark::DoNotOptimize(check_bessel_zeros(s));
}
BENCHMARK(BM_BesselZeroCheck)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
