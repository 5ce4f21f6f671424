#include <benchmark/benchmark.h>

#include "peisert/canon.hpp"
#include "peisert/classify.hpp"
#include "peisert/cliques.hpp"
#include "peisert/constructions.hpp"

using namespace peisert;

namespace {

BasisPtr basis_for(std::uint32_t q) {
  const auto [p, n] = prime_power(q);
  return make_basis(make_tower(p, n));
}

void BM_FieldMultiply(benchmark::State& state) {
  const auto t = make_tower(2, 5);
  const std::uint32_t n = t->order();
  std::uint32_t a = 1, b = 3;
  for (auto _ : state) {
    Elem x = t->mul(Elem{a}, Elem{b});
    benchmark::DoNotOptimize(x);
    a = (a * 17 + 1) % n;
    b = (b * 13 + 7) % n;
  }
}
BENCHMARK(BM_FieldMultiply);

void BM_FieldAddOddChar(benchmark::State& state) {
  const auto t = make_tower(3, 3);
  const std::uint32_t n = t->order();
  std::uint32_t a = 1, b = 3;
  for (auto _ : state) {
    Elem x = t->add(Elem{a}, Elem{b});
    benchmark::DoNotOptimize(x);
    a = (a * 17 + 1) % n;
    b = (b * 13 + 7) % n;
  }
}
BENCHMARK(BM_FieldAddOddChar);

void BM_MaxCliquesExtremal(benchmark::State& state) {
  const Construction c = extremal_construction(basis_for(static_cast<std::uint32_t>(state.range(0))));
  c.graph.bits();
  for (auto _ : state) benchmark::DoNotOptimize(count_max_cliques(c.graph));
}
BENCHMARK(BM_MaxCliquesExtremal)->Arg(9)->Arg(16)->Arg(25)->Arg(27)->Unit(benchmark::kMillisecond);

void BM_StrictEkrPrime(benchmark::State& state) {
  const std::uint32_t q = static_cast<std::uint32_t>(state.range(0));
  const PeisertGraph g(basis_for(q), enumerate_types(ProjectiveLine(basis_for(q)->tower_ptr()), 5).front());
  for (auto _ : state) benchmark::DoNotOptimize(strict_ekr(g));
}
BENCHMARK(BM_StrictEkrPrime)->Arg(13)->Arg(19)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state) {
  const Construction c = oval_graph_xq(basis_for(static_cast<std::uint32_t>(state.range(0))));
  const BitGraph& g = c.graph.bits();
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->Arg(9)->Arg(16)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_CensusRow(benchmark::State& state) {
  const auto b = basis_for(13);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(census(b, m, m));
}
BENCHMARK(BM_CensusRow)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
