#pragma once

// Finite descriptions of equivariant equivalence relations on the states of
// a DFA.
//
// A signature groups state orbits into classes, gives each class a
// characteristic, and fixes the offset between any two orbits of a class.
// It stands for the least equivalence containing
//   (tau, i) == (tau, i + char)   and   (tau, i) == (sigma, i + diff(tau, sigma)).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sla/automata.hpp"
#include "sla/semilinear.hpp"

namespace sla {

struct EquivalenceType {
  std::vector<std::vector<OrbitId>> classes;

  /// Index of the class holding `id`; throws Error if none does.
  std::size_t class_of(const OrbitId& id) const;
  bool related(const OrbitId& a, const OrbitId& b) const;
  /// Least id of the class.
  const OrbitId& representative(std::size_t cls) const;

  bool operator==(const EquivalenceType&) const = default;
};

struct EquivalenceSignature {
  EquivalenceType sim;
  std::vector<Int> chars;                              // one per class
  std::map<std::pair<OrbitId, OrbitId>, Int> diffs;    // only related pairs

  Int char_of(const OrbitId& id) const { return chars.at(sim.class_of(id)); }
  /// diff(a, b) reduced modulo the class characteristic. Looks up (a, b),
  /// then (b, a) negated, then goes through the class representative.
  /// Throws Error when the pair is unrelated or nothing determines it.
  Int diff(const OrbitId& a, const OrbitId& b) const;

  bool operator==(const EquivalenceSignature&) const = default;
};

/// Singleton classes, each with the characteristic of its orbit.
EquivalenceSignature identity_signature(const OrbitFiniteSet& states);

/// Accepting orbits in one class and the rest in another; characteristic 1.
EquivalenceSignature acceptance_signature(const EquivariantDFA& d);

/// Empty exactly when phi is a well-formed signature over `states`.
std::vector<std::string> check_signature(const EquivalenceSignature& phi, const OrbitFiniteSet& states);

bool equiv(const EquivalenceSignature& phi, const Element& e1, const Element& e2);

/// All Delta with f(i) == g(i + Delta) under phi for every integer i. Both
/// maps are read in difference coordinates over `states`.
PeriodicSet1D shift_set(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const EquivalenceSignature& phi,
                        const OrbitFiniteSet& states);
/// Membership in shift_set without building the set.
bool in_shift_set(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const EquivalenceSignature& phi,
                  const OrbitFiniteSet& states, Int delta);

bool is_congruence(const EquivariantDFA& d, const EquivalenceSignature& phi);
bool is_nontrivial(const EquivalenceSignature& phi, const OrbitFiniteSet& states);
bool respects_accepting(const EquivalenceSignature& phi, const EquivariantDFA& d);

struct Quotient {
  EquivariantDFA automaton;
  /// (tau, x) maps to (first, x - second) in the quotient.
  std::map<OrbitId, std::pair<OrbitId, Int>> projection;

  Element project(const Element& e) const;
};

/// Throws Error unless phi is a congruence that respects acceptance. Each
/// quotient orbit is named after the least orbit id of its class.
Quotient quotient(const EquivariantDFA& d, const EquivalenceSignature& phi);

/// The signature of the next level of the length-bounded future equivalence.
EquivalenceSignature refine(const EquivariantDFA& d, const EquivalenceSignature& phi);

/// `sim={[q0,q1],[q2]}; char={c0,c1}; diff={(q0,q1):d}`.
std::string to_string(const EquivalenceSignature& phi);
/// Throws ParseError.
EquivalenceSignature parse_signature(std::string_view text);

}  // namespace sla
