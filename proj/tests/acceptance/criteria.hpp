#pragma once

// One function per acceptance criterion, each with its own oracle.

#include <random>
#include <string>
#include <vector>

#include "sla/automata.hpp"

namespace acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct NamedAutomaton {
  std::string name;
  sla::EquivariantDFA dfa;
};

/// Corpus files, generated diff(K) variants, and counter-machine automata.
std::vector<NamedAutomaton> corpus_automata();

/// Random DFA whose state orbits all have characteristic in [1, max_char].
sla::EquivariantDFA random_finite_automaton(std::mt19937_64& rng, sla::Int max_char);

Verdict refinement_divergence();
Verdict shift_set_soundness();
Verdict congruence_search_oracle();
Verdict minimization_correctness();
Verdict emptiness_fixpoint();
Verdict counter_machine_encoding();
Verdict epad_solver();
Verdict equivariance();

}  // namespace acceptance
