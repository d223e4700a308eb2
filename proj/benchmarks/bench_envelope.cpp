#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "qmfs/core.hpp"

using namespace qmfs;

static void BM_StroboscopicEnvelope(benchmark::State& state) {
  std::vector<double> samples(65);
  for (std::size_t i = 0; i < samples.size(); ++i)
    samples[i] = std::pow(std::sin(std::numbers::pi * i / 64.0), 2);
  const auto pulse = sampled_pulse(samples, std::numbers::pi);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stroboscopic_envelope(pulse, 0.1, 1.0, n_max));
}
BENCHMARK(BM_StroboscopicEnvelope)->Arg(15)->Arg(63);
