#include <benchmark/benchmark.h>

#include <cmath>

#include "fbl/bounds.hpp"
#include "fbl/geometry.hpp"
#include "fbl/sim.hpp"
#include "fbl/specfun.hpp"

namespace {

void BM_chi_inv_cdf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fbl::chi_inv_cdf(n, 0.95));
}
BENCHMARK(BM_chi_inv_cdf)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

void BM_angle_fraction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fbl::angle_fraction(n, {0.7}));
}
BENCHMARK(BM_angle_fraction)->Arg(8)->Arg(64)->Arg(512);

void BM_p_pair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double R = fbl::decision_radius(n, 1.0, 0.05);
  for (auto _ : state)
    benchmark::DoNotOptimize(fbl::p_pair(n, 1.0, R, 2.2 * R));
}
BENCHMARK(BM_p_pair)->Arg(8)->Arg(32)->Arg(128);

void BM_compute_point(benchmark::State& state) {
  fbl::SystemConfig cfg;
  cfg.M = 2;
  cfg.n = static_cast<int>(state.range(0));
  cfg.k = 16;
  cfg.energy_mode = fbl::EnergyMode::ebn0_db;
  cfg.energy_value = 0.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(fbl::compute_point(cfg));
}
BENCHMARK(BM_compute_point)->Arg(32)->Arg(64)->Arg(128);

void BM_dmin_upper(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fbl::dmin_upper(2, n, 16));
}
BENCHMARK(BM_dmin_upper)->Arg(64)->Arg(256)->Arg(1024);

void BM_decode_trial(benchmark::State& state) {
  const int n = 16, k = static_cast<int>(state.range(0));
  const auto cb = fbl::sim::gen_codebook(
      2, n, k, fbl::sim::Constellation::antipodal, 1.0, 1);
  std::vector<double> y(cb.word(0).begin(), cb.word(0).end());
  y[0] += 0.3;
  for (auto _ : state)
    benchmark::DoNotOptimize(fbl::sim::decode(cb, y, 2.0, 0));
  state.SetItemsProcessed(state.iterations() * cb.size());
}
BENCHMARK(BM_decode_trial)->Arg(4)->Arg(8)->Arg(12);

void BM_run_trials(benchmark::State& state) {
  const auto cb = fbl::sim::gen_codebook(
      2, 16, 8, fbl::sim::Constellation::antipodal, 1.0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbl::sim::run_trials(cb, 0.7, 2.5, 10000, 3));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_run_trials);

}  // namespace

BENCHMARK_MAIN();
