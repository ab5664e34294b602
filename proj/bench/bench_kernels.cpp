#include <benchmark/benchmark.h>

#include "duality/effectalg.hpp"
#include "duality/faces.hpp"
#include "duality/preframes.hpp"
#include "duality/states.hpp"

using namespace duality;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) {
  st.SetLabel(st.range(0) == 0 ? "serial" : "parallel x" + std::to_string(kernels::thread_count()));
}

void BM_StateSpace(benchmark::State& st) {
  const auto e = EffectAlgebra::product(EffectAlgebra::mo2(), EffectAlgebra::interval_nat(3));
  for (auto _ : st) benchmark::DoNotOptimize(state_space(e, mode(st)).extremes.size());
  label(st);
}

void BM_EffectAxioms(benchmark::State& st) {
  const auto e = EffectAlgebra::powerset(5);
  for (auto _ : st) benchmark::DoNotOptimize(check_effect_axioms(e, mode(st)).ok());
  label(st);
}

void BM_PrimeFiltersSimplex(benchmark::State& st) {
  std::vector<std::string> labels;
  for (int i = 0; i < 12; ++i) labels.push_back("v" + std::to_string(i));
  const auto x = ConvexAlgebra::simplex("Simplex(12)", labels);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_prime_filters(x, mode(st)).size());
  label(st);
}

void BM_PrimeFiltersPolytope(benchmark::State& st) {
  const auto x = ConvexAlgebra::polytope(
      "cube", 3,
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_prime_filters(x, mode(st)).size());
  label(st);
}

void BM_ScottFilters(benchmark::State& st) {
  const auto l = FinitePreframe::chain(16);
  for (auto _ : st) benchmark::DoNotOptimize(scott_open_filters(l, mode(st)).size());
  label(st);
}

void BM_EffectHoms(benchmark::State& st) {
  const auto e = EffectAlgebra::powerset(3), d = EffectAlgebra::interval_nat(6);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_ea_homs(e, d, mode(st)).size());
  label(st);
}

}  // namespace

BENCHMARK(BM_StateSpace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EffectAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimeFiltersSimplex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimeFiltersPolytope)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScottFilters)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EffectHoms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
