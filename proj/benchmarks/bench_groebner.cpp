#include <benchmark/benchmark.h>

#include "scfd/consistency.hpp"
#include "scfd/stokes_models.hpp"

using namespace scfd;

static void BM_DifferentialCompletion(benchmark::State& st) {
  auto F = stokes_system();
  auto r = diff_ranking_pot();
  for (auto _ : st) benchmark::DoNotOptimize(groebner_complete(F, r));
}
BENCHMARK(BM_DifferentialCompletion)->Unit(benchmark::kMillisecond);

static void BM_Elimination(benchmark::State& st) {
  auto d = discretize();
  for (auto _ : st)
    benchmark::DoNotOptimize(eliminate(d, {GridIndet::ux, GridIndet::uy, GridIndet::vx, GridIndet::vy}));
}
BENCHMARK(BM_Elimination)->Unit(benchmark::kMillisecond);

static void BM_DifferenceCompletion(benchmark::State& st) {
  auto s = scheme(static_cast<SchemeKind>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(groebner_difference(s));
}
BENCHMARK(BM_DifferenceCompletion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ModifiedEquations(benchmark::State& st) {
  auto s = scheme(SchemeKind::Consistent);
  auto b = scheme_base_points(SchemeKind::Consistent);
  auto inv = involutive_system();
  for (auto _ : st) benchmark::DoNotOptimize(modified_equations(s, b, static_cast<int>(st.range(0)), inv));
}
BENCHMARK(BM_ModifiedEquations)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
