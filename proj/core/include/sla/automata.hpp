#pragma once

// Equivariant automata with semilinear transitions.
//
// A deterministic transition is stored once per (state orbit, letter orbit),
// for the representative letter of value 0, as a piecewise-affine map in
// difference coordinates: reading (alpha, v) in state (tau, x) evaluates the
// map at x - v and translates the result by v. Equivariance is then built in.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sla/atoms.hpp"
#include "sla/semilinear.hpp"

namespace sla {

struct Letter {
  OrbitId orbit;
  Int value = 0;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

std::string to_string(const Letter& a);
std::string to_string(const Word& w);

struct EquivariantDFA {
  OrbitFiniteSet states;
  OrbitFiniteSet alphabet;
  std::map<std::pair<OrbitId, OrbitId>, PiecewiseAffineMap> transitions;  // (state, letter)
  Element initial;
  std::set<OrbitId> accepting;

  /// Throws Error when the map is missing.
  const PiecewiseAffineMap& map(const OrbitId& state, const OrbitId& letter) const;
  bool operator==(const EquivariantDFA&) const = default;
};

/// Relations over the difference coordinates (value(q) - v, value(q') - v).
struct EquivariantNFA {
  OrbitFiniteSet states;
  OrbitFiniteSet alphabet;
  std::map<std::tuple<OrbitId, OrbitId, OrbitId>, LinearSetUnion> transitions;  // (state, letter, state')
  std::set<OrbitId> initial;
  std::set<OrbitId> accepting;

  bool operator==(const EquivariantNFA&) const = default;
};

Element step(const EquivariantDFA& d, const Element& q, const Letter& a);
Element run(const EquivariantDFA& d, const Word& w);
bool accepts(const EquivariantDFA& d, const Word& w);

/// Least fixpoint of the orbit-level successor relation. `iterations`, when
/// given, receives the number of rounds until the set stopped growing.
std::set<OrbitId> reachable_orbits(const EquivariantDFA& d, std::size_t* iterations = nullptr);
std::set<OrbitId> reachable_orbits(const EquivariantNFA& n, std::size_t* iterations = nullptr);

bool is_empty(const EquivariantDFA& d);
bool is_empty(const EquivariantNFA& n);

/// An accepted word, or nullopt exactly when the language is empty.
std::optional<Word> find_word(const EquivariantDFA& d);

/// Restriction to the reachable orbits.
EquivariantDFA trim(const EquivariantDFA& d);

/// Empty when every structural invariant holds.
std::vector<std::string> validate(const EquivariantDFA& d);
std::vector<std::string> validate(const EquivariantNFA& n);

/// Equal alphabets and an orbit bijection with per-orbit translations that
/// carries initial state, accepting orbits, and transitions onto each other.
/// Orbits are matched by propagation from the initial state, so both
/// automata should be trimmed.
bool isomorphic(const EquivariantDFA& a, const EquivariantDFA& b);

}  // namespace sla
