#include <benchmark/benchmark.h>

#include "qmfs/ladder.hpp"
#include "qmfs/suppression.hpp"

using namespace qmfs;

static void BM_BadCavityTwoTone(benchmark::State& state) {
  const Oscillator osc({1.001, 1e-4, 1e-4, 1.0, 0.0});
  const auto env = two_tone_envelope(1.0, 0.2);
  const int n_max = static_cast<int>(state.range(0));
  double w = 0.0;
  for (auto _ : state) {
    const auto t = badcavity_transfer(osc, env, w, n_max);
    benchmark::DoNotOptimize(output_psd(t, RungInputs::vacuum(t)));
    w += 1e-7;
  }
}
BENCHMARK(BM_BadCavityTwoTone)->Arg(3)->Arg(15)->Arg(63);

static void BM_FullCavity(benchmark::State& state) {
  const Oscillator osc({1.001, 1e-4, 1e-4, 1.0, 0.0});
  const auto env = two_tone_envelope(1.0, 0.2);
  const auto cav = CavityParams::from_readout_rate(1e3, osc.readout_rate());
  for (auto _ : state) benchmark::DoNotOptimize(fullcavity_transfer(osc, env, cav, 1e-4, 15));
}
BENCHMARK(BM_FullCavity);

static void BM_TwinCascade(benchmark::State& state) {
  const Oscillator osc({1.001, 1e-4, 2e-4, 1.0, 0.0});
  const auto twin = TwinCascade::uniform(osc, two_tone_envelope(1.0, 0.0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(twin_cancellation_transfer(twin, 1e-4));
}
BENCHMARK(BM_TwinCascade);
