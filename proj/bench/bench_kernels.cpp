// Serial reference vs OpenMP for the two data-parallel kernels.

#include "mmp/kernels.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace mmp;

MomentSequence random_problem(std::uint64_t seed, Index n, int atoms, int l) {
  return moments_of(gen_random_measure(seed, n, atoms, -2.0, 3.0), l);
}

kernels::PerronSweep make_sweep(const ExtensionInterval& iv, double step) {
  PerronGrid grid;
  grid.step = step;
  auto [nodes, weights] = gauss_legendre(grid.cell_points);
  return {&iv,   CanonicalParameter::scalar(0.5).resolve(iv.support_dim()),
          iv.model.gram.probes(), perron_cells(grid), grid.eps, nodes, weights};
}

const ExtensionInterval& sweep_interval() {
  static const ExtensionInterval iv = build_odd_pipeline(random_problem(11, 2, 3, 4)).interval;
  return iv;
}

const std::vector<MomentSequence>& batch() {
  static const std::vector<MomentSequence> problems = [] {
    std::vector<MomentSequence> out;
    for (std::uint64_t s = 0; s < 128; ++s)
      out.push_back(random_problem(s, 1 + static_cast<Index>(s % 3), 1 + static_cast<int>(s % 4), 2 * (1 + static_cast<int>(s % 3))));
    return out;
  }();
  return problems;
}

void BM_PerronSerial(benchmark::State& state) {
  const auto sweep = make_sweep(sweep_interval(), 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::perron_masses_serial(sweep));
}

void BM_PerronOmp(benchmark::State& state) {
  const auto sweep = make_sweep(sweep_interval(), 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::perron_masses_omp(sweep));
}

void BM_RoundTripSerial(benchmark::State& state) {
  const auto k = CanonicalParameter::scalar(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::round_trip_serial(batch(), k, k));
}

void BM_RoundTripOmp(benchmark::State& state) {
  const auto k = CanonicalParameter::scalar(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::round_trip_omp(batch(), k, k));
}

}  // namespace

BENCHMARK(BM_PerronSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PerronOmp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RoundTripSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundTripOmp)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
