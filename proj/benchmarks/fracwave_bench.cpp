#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fracwave/damping.hpp"
#include "fracwave/evolution.hpp"
#include "fracwave/resolvent.hpp"
#include "fracwave/resonance.hpp"
#include "fracwave/spectral.hpp"

namespace {

using namespace fracwave;

void BM_ForwardTransform(benchmark::State& state) {
  const GridSpec spec(static_cast<std::size_t>(state.range(0)));
  std::vector<double> values(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) values[j] = std::exp(std::sin(spec.point(j)));
  const GridField field(spec, std::move(values));
  for (auto _ : state) {
    ModeField modes = to_modes(field);
    benchmark::DoNotOptimize(modes);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardTransform)->RangeMultiplier(2)->Range(256, 8192)->Complexity(benchmark::oNLogN);

void BM_RhsEval(benchmark::State& state) {
  const GridSpec spec(static_cast<std::size_t>(state.range(0)));
  SimulationConfig config(make_profile(DampingKind::kChi3, 0.25, spec));
  const StateVector s = initial_condition(InitialCondition::kLocalizedHighFreq, spec);
  for (auto _ : state) {
    StateVector d = rhs_eval(s, config);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_RhsEval)->Arg(512)->Arg(2048);

void BM_PencilResonances(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DampingProfile profile = make_profile(DampingKind::kChi1, 1.0, GridSpec(512));
  const OperatorPencil pencil = build_pencil(profile, 0.25, n);
  for (auto _ : state) {
    ResonanceSet set = pencil_resonances(pencil);
    benchmark::DoNotOptimize(set);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_PencilResonances)->Arg(12)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ResolventNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DampingProfile profile = make_profile(DampingKind::kChi3, 1.0, GridSpec(1024));
  const OperatorPencil pencil = build_pencil(profile, 0.25, n);
  for (auto _ : state) {
    ResolventSample sample = resolvent_norm(pencil, Complex(6.5, 0.0));
    benchmark::DoNotOptimize(sample);
  }
}
BENCHMARK(BM_ResolventNorm)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
