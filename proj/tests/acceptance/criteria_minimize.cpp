#include <chrono>

#include "criteria.hpp"
#include "fixtures.hpp"
#include "sla/minimize.hpp"
#include "sla/signatures.hpp"

namespace acceptance {

using namespace sla;

namespace {

bool sound(const EquivariantDFA& d, const EquivalenceSignature& phi) {
  return check_signature(phi, d.states).empty() && is_congruence(d, phi) && is_nontrivial(phi, d.states) &&
         respects_accepting(phi, d);
}

}  // namespace

Verdict congruence_search_oracle() {
  std::mt19937_64 rng(2024);
  int disagreements = 0, unsound = 0, incomplete = 0, found = 0;
  double search_time = 0, brute_time = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    auto d = random_finite_automaton(rng, 12);
    auto t0 = std::chrono::steady_clock::now();
    auto s = exists_nontrivial_congruence(d);
    auto t1 = std::chrono::steady_clock::now();
    auto b = brute_force_search(d);
    search_time += std::chrono::duration<double>(t1 - t0).count();
    brute_time += std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    if (s.status == SearchStatus::Unknown || !b.complete) ++incomplete;
    if ((s.status == SearchStatus::Found) != b.signature.has_value()) ++disagreements;
    if (s.signature) {
      ++found;
      if (!sound(d, *s.signature)) ++unsound;
    }
    if (b.signature && !sound(d, *b.signature)) ++unsound;
  }
  std::string detail = std::to_string(trials) + " automata, " + std::to_string(found) + " with a congruence, " +
                       std::to_string(disagreements) + " disagreements, " + std::to_string(unsound) +
                       " unsound witnesses, " + std::to_string(incomplete) + " incomplete, search " +
                       std::to_string(static_cast<int>(search_time)) + "s, brute force " +
                       std::to_string(static_cast<int>(brute_time)) + "s";
  return {disagreements == 0 && unsound == 0 && incomplete == 0, detail};
}

Verdict minimization_correctness() {
  auto automata = corpus_automata();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) automata.push_back({"random " + std::to_string(i), random_finite_automaton(rng, 12)});

  int violations = 0;
  std::string first;
  for (const auto& [name, d] : automata) {
    auto m = minimize(d);
    bool same = true;
    fixtures::for_each_word(fixtures::letter_sample(d, -2, 2), 4, [&](const Word& w) {
      if (same && accepts(d, w) != accepts(m.automaton, w)) same = false;
    });
    bool idempotent = isomorphic(minimize(m.automaton).automaton, m.automaton);
    if (!same || !idempotent) {
      if (violations++ == 0) first = ", first: " + name + (same ? " (not idempotent)" : " (language changed)");
    }
  }
  return {violations == 0,
          std::to_string(automata.size()) + " automata, " + std::to_string(violations) + " violations" + first};
}

}  // namespace acceptance
