#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "latqpa/erp_geometry.hpp"
#include "latqpa/metrics.hpp"
#include "latqpa/qpa.hpp"
#include "latqpa/rd_eval.hpp"
#include "latqpa/rd_sim.hpp"
#include "latqpa/vector_bank.hpp"
#include "latqpa/yuv.hpp"

namespace {

using namespace latqpa;

VectorBank make_bank(int q_num, int channels) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  std::vector<float> v(static_cast<std::size_t>(q_num) * channels);
  for (auto& x : v) x = dist(rng);
  return VectorBank(q_num, channels, std::move(v));
}

void BM_BuildQualityMap(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_quality_map(rows, default_config(32), true));
  state.SetItemsProcessed(state.iterations() * rows);
}
BENCHMARK(BM_BuildQualityMap)->Arg(64)->Arg(4320);

void BM_Interpolate(benchmark::State& state) {
  const auto bank = make_bank(64, static_cast<int>(state.range(0)));
  double q = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(interpolate(bank, q));
    q = q < 62.0 ? q + 0.37 : 0.0;
  }
}
BENCHMARK(BM_Interpolate)->Arg(64)->Arg(256);

void BM_RowModulationMatrix(benchmark::State& state) {
  const auto bank = make_bank(64, 256);
  const auto map = build_quality_map(static_cast<int>(state.range(0)), default_config(32), true);
  for (auto _ : state) benchmark::DoNotOptimize(row_modulation_matrix(bank, map));
}
BENCHMARK(BM_RowModulationMatrix)->Arg(68)->Arg(270);

void BM_WsPsnrFrame(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  const VideoSpec spec{width, width / 2, 8, 1};
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> dist(0, 255);
  YuvFrame a(spec), b(spec);
  for (int c = 0; c < 3; ++c) {
    for (auto& s : a.plane(c).samples()) s = static_cast<std::uint16_t>(dist(rng));
    for (auto& s : b.plane(c).samples()) s = static_cast<std::uint16_t>(dist(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(ws_psnr_yuv(a, b));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(spec.frame_bytes()));
}
BENCHMARK(BM_WsPsnrFrame)->Arg(1024)->Arg(3840)->Unit(benchmark::kMillisecond);

void BM_BdRate(benchmark::State& state) {
  const auto method = state.range(0) == 0 ? BdMethod::piecewise_cubic : BdMethod::polynomial;
  const auto ref = validate_curve({{1000, 32.1}, {1900, 34.9}, {3700, 37.2}, {7400, 39.0}, {14000, 40.3}});
  const auto test = validate_curve({{950, 32.4}, {1750, 35.0}, {3500, 37.5}, {6900, 39.1}});
  for (auto _ : state) benchmark::DoNotOptimize(bd_rate(ref, test, method));
}
BENCHMARK(BM_BdRate)->Arg(0)->Arg(1);

void BM_BruteForceAllocation(benchmark::State& state) {
  const auto lat = erp_band_latitudes(static_cast<int>(state.range(0)));
  const RdModel model{100, 1};
  const double total = sphere_score(adapted_allocation(model, 50, lat)).total_rate;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimal_allocation(model, lat, total, 10000));
}
BENCHMARK(BM_BruteForceAllocation)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SimulateBdGain(benchmark::State& state) {
  const auto lat = erp_band_latitudes(64);
  const std::vector<double> sweep{1, 2, 4, 8, 16};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_bd_gain(RdModel{100, 1}, lat, sweep));
}
BENCHMARK(BM_SimulateBdGain);

}  // namespace

BENCHMARK_MAIN();
