#include <benchmark/benchmark.h>

#include <random>

#include "sla/constructions.hpp"
#include "sla/epad.hpp"
#include "sla/minimize.hpp"
#include "sla/signatures.hpp"

using namespace sla;

namespace {

EquivariantDFA odds() { return gen_diffk(PeriodicSet1D::residue_class(1, 2)); }

// One class per orbit, with characteristics drawn from [1, max_char].
EquivariantDFA random_finite(std::uint64_t seed, Int max_char) {
  std::mt19937_64 rng(seed);
  auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  std::vector<Orbit> orbits;
  for (int i = 0; i < 3; ++i) orbits.push_back({"s" + std::to_string(i), pick(1, max_char)});
  EquivariantDFA d;
  d.states = OrbitFiniteSet(orbits);
  d.alphabet = OrbitFiniteSet({{"a", 0}, {"b", 0}});
  d.initial = {"s0", 0};
  d.accepting = {"s0"};
  for (const auto& o : orbits)
    for (const char* a : {"a", "b"}) {
      PiecewiseAffineMap m{o.id, {}};
      for (Int x = 0; x < o.characteristic; ++x) {
        const Orbit& t = orbits[static_cast<std::size_t>(pick(0, 2))];
        m.pieces.push_back({{x, 1, 1}, t.id, 0, pick(0, t.characteristic - 1)});
      }
      d.transitions[{o.id, a}] = std::move(m);
    }
  return d;
}

}  // namespace

static void BM_Step(benchmark::State& state) {
  auto d = gen_binprefix();
  Element q{"int", 12345};
  Int v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(d, q, {"zero", v}));
    v = (v + 1) & 0xff;
  }
}
BENCHMARK(BM_Step);

static void BM_ShiftSet(benchmark::State& state) {
  auto d = odds();
  auto phi = identity_signature(d.states);
  phi.chars[d.states.index_of("int")] = 2;
  const auto& m = d.map("int", "z");
  for (auto _ : state) benchmark::DoNotOptimize(shift_set(m, m, phi, d.states));
}
BENCHMARK(BM_ShiftSet);

static void BM_RefineBinprefix(benchmark::State& state) {
  auto d = gen_binprefix();
  for (auto _ : state) benchmark::DoNotOptimize(partition_refinement(d, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_RefineBinprefix)->Arg(2)->Arg(6)->Arg(10);

static void BM_FindWord(benchmark::State& state) {
  auto d = gen_binprefix();
  for (auto _ : state) benchmark::DoNotOptimize(find_word(d));
}
BENCHMARK(BM_FindWord);

static void BM_CongruenceSearch(benchmark::State& state) {
  auto d = random_finite(static_cast<std::uint64_t>(state.range(0)), 12);
  for (auto _ : state) benchmark::DoNotOptimize(exists_nontrivial_congruence(d));
}
BENCHMARK(BM_CongruenceSearch)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_BruteForceSearch(benchmark::State& state) {
  auto d = random_finite(static_cast<std::uint64_t>(state.range(0)), 12);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_search(d));
}
BENCHMARK(BM_BruteForceSearch)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_MinimizeOdds(benchmark::State& state) {
  auto d = odds();
  for (auto _ : state) benchmark::DoNotOptimize(minimize(d));
}
BENCHMARK(BM_MinimizeOdds)->Unit(benchmark::kMillisecond);

static void BM_SolveVariableModuli(benchmark::State& state) {
  auto f = epad::parse_formula("3x %= 3 mod y; 5y %= 7 mod x; 2x = y - 18");
  for (auto _ : state) benchmark::DoNotOptimize(epad::solve(f));
}
BENCHMARK(BM_SolveVariableModuli)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
