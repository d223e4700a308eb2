#include <benchmark/benchmark.h>

#include "qmfs/gwd.hpp"

using namespace qmfs;

static void BM_Fig5Curves(benchmark::State& state) {
  const auto preset = GwdPreset::table_one(AuxiliaryKind::spin);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fig5_curves(preset, threads));
}
BENCHMARK(BM_Fig5Curves)->Arg(1)->Arg(4);

static void BM_ReducedForcePsd(benchmark::State& state) {
  const auto pair = GwdPreset::table_one(AuxiliaryKind::mechanical).pair(Topology::parallel);
  double w = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_force_psd(pair, w));
    w += 1e-3;
  }
}
BENCHMARK(BM_ReducedForcePsd);
