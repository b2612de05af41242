// Microbenchmarks for the numerical kernels, from scalar special functions up
// to a small field-grid energy sum. Run with --benchmark_filter=... to focus.
#include <benchmark/benchmark.h>

#include "magvac/magvac.hpp"

namespace {

using namespace magvac;

const PauliVillarsScheme& scheme() {
  static const PauliVillarsScheme s = make_scheme(1.0, 2.0, 3.0);
  return s;
}

const QuadratureConfig& config() {
  static const QuadratureConfig c;
  return c;
}

void bm_coth_m1_series(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(coth_m1(5e-3));
}
BENCHMARK(bm_coth_m1_series);

void bm_coth_m1_direct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(coth_m1(2.0));
}
BENCHMARK(bm_coth_m1_direct);

void bm_pv_exp_sum_moment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pv_exp_sum(scheme(), 5e-5));
}
BENCHMARK(bm_pv_exp_sum_moment);

void bm_pv_exp_sum_direct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pv_exp_sum(scheme(), 0.37));
}
BENCHMARK(bm_pv_exp_sum_direct);

void bm_theta2_resummed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theta2(5e-3, 1.0));
}
BENCHMARK(bm_theta2_resummed);

void bm_theta2_direct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theta2(0.5, 1.0));
}
BENCHMARK(bm_theta2_direct);

void bm_bessel_k0(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bessel_k(0, 1.0, config()));
}
BENCHMARK(bm_bessel_k0)->Unit(benchmark::kMicrosecond);

void bm_m0_response(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(m0_response(1.0, scheme(), config()));
}
BENCHMARK(bm_m0_response)->Unit(benchmark::kMicrosecond);

void bm_mt_response(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mt_response(1.0, 1.0, scheme(), config()));
}
BENCHMARK(bm_mt_response)->Unit(benchmark::kMicrosecond);

void bm_g_total(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(g_total(1.0, 1.0, scheme(), config()));
}
BENCHMARK(bm_g_total)->Unit(benchmark::kMicrosecond);

void bm_gt_coshint(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gt_coshint(1.0, 1.0, scheme(), config()));
}
BENCHMARK(bm_gt_coshint)->Unit(benchmark::kMicrosecond);

void bm_f0_pv(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(f0_pv(1.0, scheme(), config()));
}
BENCHMARK(bm_f0_pv)->Unit(benchmark::kMicrosecond);

void bm_ft_pv(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ft_pv(1.0, 1.0, scheme(), config()));
}
BENCHMARK(bm_ft_pv)->Unit(benchmark::kMicrosecond);

void bm_total_density(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(total_density(1.0, 1.0, scheme(), config()));
}
BENCHMARK(bm_total_density)->Unit(benchmark::kMicrosecond);

void bm_local_energy_9cubed(benchmark::State& state) {
  TestFieldParams params;
  params.dims = {9, 9, 9};
  const FieldGrid grid = make_test_field(TestFieldKind::gaussian_loop, params);
  for (auto _ : state)
    benchmark::DoNotOptimize(local_energy(grid, 1.0, scheme(), config()));
}
BENCHMARK(bm_local_energy_9cubed)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
