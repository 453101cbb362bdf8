#include <benchmark/benchmark.h>

#include "scfd/numerics.hpp"

using namespace scfd::num;

static void BM_Assemble(benchmark::State& st) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(assemble(pb, SolverMode::Coupled));
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolveScheme(benchmark::State& st) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(static_cast<int>(st.range(0))));
  auto s = assemble(pb, SolverMode::Coupled);
  for (auto _ : st) benchmark::DoNotOptimize(solve_sparse(s));
}
BENCHMARK(BM_SolveScheme)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolveMac(benchmark::State& st) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(mac_solve(pb));
}
BENCHMARK(BM_SolveMac)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
