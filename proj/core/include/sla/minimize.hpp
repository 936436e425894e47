#pragma once

// Minimization of equivariant DFAs by repeated quotients.
//
// A DFA is minimal iff it has no nontrivial congruence that respects the
// accepting orbits. For each candidate grouping of state orbits the existence
// of such a congruence is a formula of existential Presburger arithmetic with
// divisibility, over one characteristic per class and one offset per orbit.

#include <optional>
#include <string>
#include <vector>

#include "sla/automata.hpp"
#include "sla/epad.hpp"
#include "sla/signatures.hpp"

namespace sla {

/// Variable names used by the encoding.
std::string char_variable(const OrbitId& representative);
std::string diff_variable(const OrbitId& orbit);

/// Satisfiable iff some congruence with equivalence type `sim` exists (and is
/// nontrivial, when asked). Offsets are measured from each class
/// representative, whose own offset is the constant 0. Throws Error when sim
/// is not a partition of the state orbits.
epad::Formula encode_congruence_existence(const EquivariantDFA& d, const EquivalenceType& sim, bool nontrivial = true);

/// Reads a signature back from a satisfying valuation of the encoding.
EquivalenceSignature decode_congruence(const EquivariantDFA& d, const EquivalenceType& sim, const epad::Valuation& v);

/// Partitions of the state orbits that never mix accepting and rejecting
/// orbits, fewest classes first.
std::vector<EquivalenceType> candidate_types(const EquivariantDFA& d);

struct CandidateOutcome {
  EquivalenceType sim;
  epad::SolveResult::Status status = epad::SolveResult::Status::Unknown;
  std::string reason;
  Int bound = 0;
};

struct CongruenceSearchReport {
  std::vector<CandidateOutcome> candidates;
  std::optional<EquivalenceSignature> found;
  bool complete = true;  // every solver answer so far was definite
};

enum class SearchStatus { Found, None, Unknown };
std::string to_string(SearchStatus s);

struct CongruenceSearch {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<EquivalenceSignature> signature;
  CongruenceSearchReport report;
};

/// Stops at the first satisfiable candidate. The decoded signature is
/// re-verified; a failure there is an internal error.
CongruenceSearch exists_nontrivial_congruence(const EquivariantDFA& d, const epad::SolveConfig& config = {});

struct BruteForceBounds {
  Int char_cap = 16;  // characteristics tried for classes of Z orbits only
  Int diff_cap = 8;   // |diff| bound when the characteristic is 0
};

struct BruteForceResult {
  std::optional<EquivalenceSignature> signature;
  bool complete = true;  // no bound cut the search short
  std::size_t tested = 0;
};

/// Direct enumeration of signatures, independent of the encoding.
BruteForceResult brute_force_search(const EquivariantDFA& d, const BruteForceBounds& bounds = {});

enum class Minimality { Yes, No, Unknown };
std::string to_string(Minimality m);

struct MinimalityResult {
  Minimality verdict = Minimality::Unknown;
  std::optional<EquivalenceSignature> witness;
  CongruenceSearchReport report;
};

/// Decided on the trimmed automaton.
MinimalityResult is_minimal(const EquivariantDFA& d, const epad::SolveConfig& config = {});

struct MinimizeRound {
  EquivalenceSignature signature;
  EquivariantDFA result;
};

struct MinimizeResult {
  EquivariantDFA automaton;
  std::vector<MinimizeRound> trace;
  bool proven_minimal = false;  // false means minimal within the solver bounds
  CongruenceSearchReport last_report;
};

MinimizeResult minimize(const EquivariantDFA& d, const epad::SolveConfig& config = {});

struct RefinementTrace {
  std::vector<EquivalenceSignature> steps;  // steps[0] separates acceptance only
  bool stabilized = false;
};

RefinementTrace partition_refinement(const EquivariantDFA& d, std::size_t max_steps);

}  // namespace sla
