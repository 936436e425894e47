#include <fstream>
#include <sstream>

#include "criteria.hpp"
#include "fixtures.hpp"
#include "sla/constructions.hpp"
#include "sla/io.hpp"

namespace acceptance {

using namespace sla;

std::vector<NamedAutomaton> corpus_automata() {
  std::vector<NamedAutomaton> out;
  for (const char* file : {"diffk_odds.aut", "binprefix.aut", "empty_accepting.aut", "dup_z3.aut"}) {
    std::ifstream f(std::string(SLA_CORPUS_DIR) + "/" + file);
    if (!f) throw Error(std::string("missing corpus file ") + file);
    std::stringstream ss;
    ss << f.rdbuf();
    out.push_back({file, parse_automaton(ss.str())});
  }
  out.push_back({"diffk [-2,3]", gen_diffk(PeriodicSet1D::interval(-2, 3))});
  out.push_back({"diffk 0 mod 3", gen_diffk(PeriodicSet1D::residue_class(0, 3))});
  for (const auto& mc : fixtures::machines())
    out.push_back(
        {std::string("cm ") + mc.name, gen_cm_constant_word_dfa(parse_counter_machine(mc.program), mc.x, mc.y)});
  return out;
}

EquivariantDFA random_finite_automaton(std::mt19937_64& rng, Int max_char) {
  auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  EquivariantDFA d;
  const Int n = pick(2, 3);
  std::vector<Orbit> orbits;
  for (Int i = 0; i < n; ++i) orbits.push_back({"s" + std::to_string(i), pick(1, max_char)});
  d.states = OrbitFiniteSet(orbits);
  d.alphabet = OrbitFiniteSet({{"a", 0}, {"b", 0}});
  d.initial = {"s0", 0};
  for (const auto& o : orbits)
    if (pick(0, 1)) d.accepting.insert(o.id);
  for (const auto& o : orbits)
    for (const char* a : {"a", "b"}) {
      PiecewiseAffineMap m{o.id, {}};
      for (Int x = 0; x < o.characteristic; ++x) {
        const Orbit& t = orbits[static_cast<std::size_t>(pick(0, n - 1))];
        m.pieces.push_back({{x, 1, 1}, t.id, 0, pick(0, t.characteristic - 1)});
      }
      d.transitions[{o.id, a}] = std::move(m);
    }
  return d;
}

}  // namespace acceptance
