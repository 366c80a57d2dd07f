#include <benchmark/benchmark.h>

#include <vector>

#include "fockmaj/approx_major.hpp"
#include "fockmaj/filtration.hpp"
#include "fockmaj/kk_series.hpp"
#include "fockmaj/majorization.hpp"
#include "fockmaj/scan.hpp"

using namespace fockmaj;

namespace {

void BM_ThermalEigenvalues(benchmark::State& state) {
  const double lambda = double(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(thermal_eigenvalues(lambda, 1e-12));
}
BENCHMARK(BM_ThermalEigenvalues)->Arg(50)->Arg(90)->Arg(99);

void BM_FilteredSchmidt(benchmark::State& state) {
  const int k = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scheme_spectrum(0.9, DualSingle{k, k}));
}
BENCHMARK(BM_FilteredSchmidt)->DenseRange(1, 8, 7);

void BM_Majorizes(benchmark::State& state) {
  const ProbVector tau = thermal_eigenvalues(0.9, 1e-12);
  const ProbVector sigma = scheme_spectrum(0.9, DualSingle{2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(majorizes(tau, sigma, 1e-10));
}
BENCHMARK(BM_Majorizes);

void BM_CirculantCertificate(benchmark::State& state) {
  const auto N = std::size_t(state.range(0));
  const FilterOp c = ladder_op(3, N);
  const FilterOp id = identity_op(N);
  const ProbVector tau = thermal_eigenvalues(0.9, 1e-12);
  for (auto _ : state) {
    const auto D = build_circulant_d(0.9, c, id, N);
    benchmark::DoNotOptimize(apply_circulant(D, tau));
  }
}
BENCHMARK(BM_CirculantCertificate)->Arg(64)->Arg(256)->Arg(1024);

void BM_EpsDecompose(benchmark::State& state) {
  const RealisticParams p = RealisticParams::make(0.9, 0.72, 1);
  const std::size_t N = required_length(p, 1e-13);
  for (auto _ : state) benchmark::DoNotOptimize(eps_decompose(p, N, 1e-13));
}
BENCHMARK(BM_EpsDecompose);

void BM_KkSeries(benchmark::State& state) {
  const int k = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(c_kk_series(k, 200));
}
BENCHMARK(BM_KkSeries)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ScanMinK(benchmark::State& state) {
  ScanGrid grid;
  grid.eta = AxisRange{0.01, 1.0, 40};
  grid.lambda = AxisRange{0.01, 0.99, 40};
  const auto workers = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(grid, workers));
}
BENCHMARK(BM_ScanMinK)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
