#pragma once

// Existential Presburger arithmetic with divisibility.
//
// Formulas are quantifier-free over (Z, 0, 1, +, |); every free variable is
// implicitly existentially quantified. The solver is layered:
//
//   1. constant divisors only: complete (variable elimination with modulus
//      tracking, see solve_conjunction);
//   2. variable divisors whose variables have a finite domain derivable from
//      top-level constraints: case split, still complete;
//   3. remaining variable divisors: bounded enumeration up to a cap, which
//      can only ever answer SAT or UNKNOWN.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sla/arith.hpp"

namespace sla::epad {

using Valuation = std::map<std::string, Int>;

class LinearTerm {
 public:
  LinearTerm() = default;
  LinearTerm(Int constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  static LinearTerm var(const std::string& name, Int coeff = 1);

  const std::map<std::string, Int>& coefficients() const { return coeffs_; }
  Int constant() const { return constant_; }
  Int coefficient(const std::string& name) const;
  bool is_constant() const { return coeffs_.empty(); }
  std::set<std::string> variables() const;

  /// Throws Error if a variable is unassigned.
  Int evaluate(const Valuation& v) const;
  LinearTerm substitute(const std::string& name, const LinearTerm& value) const;
  LinearTerm substitute(const Valuation& partial) const;

  LinearTerm operator-() const;
  LinearTerm& operator+=(const LinearTerm& o);
  LinearTerm& operator-=(const LinearTerm& o);
  LinearTerm& operator*=(Int k);
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, Int k) { return a *= k; }
  friend LinearTerm operator*(Int k, LinearTerm a) { return a *= k; }
  bool operator==(const LinearTerm&) const = default;

  std::string to_string() const;

 private:
  std::map<std::string, Int> coeffs_;  // no zero entries
  Int constant_ = 0;
};

enum class Relation { Le, Eq, Divides };

/// lhs <= rhs, lhs = rhs, or lhs | rhs.
struct Atom {
  Relation rel;
  LinearTerm lhs;
  LinearTerm rhs;
  bool operator==(const Atom&) const = default;
};

class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  Formula();  // true
  static Formula truth(bool value);
  static Formula atom(Atom a);
  static Formula le(LinearTerm a, LinearTerm b) { return atom({Relation::Le, std::move(a), std::move(b)}); }
  static Formula lt(LinearTerm a, LinearTerm b) { return le(std::move(a) + 1, std::move(b)); }
  static Formula ge(LinearTerm a, LinearTerm b) { return le(std::move(b), std::move(a)); }
  static Formula gt(LinearTerm a, LinearTerm b) { return lt(std::move(b), std::move(a)); }
  static Formula eq(LinearTerm a, LinearTerm b) { return atom({Relation::Eq, std::move(a), std::move(b)}); }
  static Formula ne(LinearTerm a, LinearTerm b);
  static Formula divides(LinearTerm d, LinearTerm t) { return atom({Relation::Divides, std::move(d), std::move(t)}); }
  /// a ≡ b (mod m), i.e. m | a - b.
  static Formula congruent(LinearTerm a, LinearTerm b, LinearTerm m) { return divides(std::move(m), std::move(a) - b); }
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula negate(Formula f);

  Kind kind() const;
  const Atom& as_atom() const;
  const std::vector<Formula>& children() const;
  std::set<std::string> variables() const;
  std::size_t node_count() const;
  std::string to_string() const;

  friend Formula operator&&(Formula a, Formula b) { return conj({std::move(a), std::move(b)}); }
  friend Formula operator||(Formula a, Formula b) { return disj({std::move(a), std::move(b)}); }
  friend Formula operator!(Formula a) { return negate(std::move(a)); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Standard semantics; d | e with d = 0 holds iff e = 0. Throws Error on an unassigned variable.
bool evaluate(const Formula& f, const Valuation& v);

/// Disjunctive normal form after pushing negations to atoms. Each literal is an
/// atom or a negated divisibility atom.
std::vector<std::vector<Formula>> to_dnf(const Formula& f);

struct SolveConfig {
  Int char_search_cap = 32;  // layer-3 enumeration bound on |value|
  Int witness_box = 0;       // optional final brute-force box, 0 disables
  bool deterministic = true;
};

struct SolveResult {
  enum class Status { Sat, Unsat, Unknown };
  Status status = Status::Unknown;
  Valuation witness;   // Sat only
  std::string reason;  // Unknown only
  Int bound = 0;       // cap used when Unknown

  bool sat() const { return status == Status::Sat; }
  bool unsat() const { return status == Status::Unsat; }
  bool unknown() const { return status == Status::Unknown; }
};

std::string to_string(SolveResult::Status s);

/// Layered satisfiability check. SAT witnesses are re-checked with evaluate.
SolveResult solve(const Formula& f, const SolveConfig& config = {});

/// One literal of a conjunction handled by the complete constant-divisor procedure.
struct Constraint {
  enum class Kind { LeZero, EqZero, Divides };  // term <= 0, term = 0, modulus | term
  Kind kind;
  LinearTerm term;
  Int modulus = 0;  // Divides only; 0 means term = 0
};

/// Complete decision for conjunctions with constant moduli. Returns a witness
/// assigning every variable of the input, or nullopt when unsatisfiable.
std::optional<Valuation> solve_conjunction(const std::vector<Constraint>& constraints);

/// Parses the infix formula syntax; throws ParseError.
Formula parse_formula(std::string_view text);

}  // namespace sla::epad
