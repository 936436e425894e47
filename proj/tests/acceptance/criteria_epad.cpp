#include <array>

#include "criteria.hpp"
#include "sla/epad.hpp"

namespace acceptance {

using namespace sla;
using namespace sla::epad;

namespace {

enum class Kind { Le, Eq, Div, NotDiv };

// a*x + b*y + c compared with 0, or tested for divisibility by d.
struct Literal {
  Int a, b, c, d;
  Kind kind;

  bool holds(Int x, Int y) const {
    Int t = a * x + b * y + c;
    switch (kind) {
      case Kind::Le:
        return t <= 0;
      case Kind::Eq:
        return t == 0;
      case Kind::Div:
        return t % d == 0;
      case Kind::NotDiv:
        return t % d != 0;
    }
    return false;
  }

  Formula formula() const {
    LinearTerm t = LinearTerm(c) + LinearTerm::var("x", a) + LinearTerm::var("y", b);
    switch (kind) {
      case Kind::Le:
        return Formula::le(t, 0);
      case Kind::Eq:
        return Formula::eq(t, 0);
      case Kind::Div:
        return Formula::divides(d, t);
      case Kind::NotDiv:
        return !Formula::divides(d, t);
    }
    return Formula::truth(false);
  }
};

constexpr Int kBox = 500;

bool scan(const std::vector<Literal>& lits) {
  for (Int x = -kBox; x <= kBox; ++x)
    for (Int y = -kBox; y <= kBox; ++y) {
      bool all = true;
      for (const auto& l : lits)
        if (!l.holds(x, y)) {
          all = false;
          break;
        }
      if (all) return true;
    }
  return false;
}

}  // namespace

Verdict epad_solver() {
  std::mt19937 rng(31);
  std::uniform_int_distribution<Int> coef(-5, 5), cst(-400, 400), mod(2, 9);
  std::uniform_int_distribution<int> kind(0, 3), count(1, 4);
  int disagreements = 0, unsound = 0, unknown = 0, sat = 0;
  const int rounds = 500;
  for (int r = 0; r < rounds; ++r) {
    std::vector<Literal> lits;
    for (int i = count(rng); i > 0; --i)
      lits.push_back({coef(rng), coef(rng), cst(rng), mod(rng), static_cast<Kind>(kind(rng))});
    std::vector<Formula> parts;
    for (const auto& l : lits) parts.push_back(l.formula());
    for (const char* v : {"x", "y"}) {
      parts.push_back(Formula::le(-kBox, LinearTerm::var(v)));
      parts.push_back(Formula::le(LinearTerm::var(v), kBox));
    }
    Formula f = Formula::conj(parts);
    auto res = solve(f);
    bool expected = scan(lits);
    if (res.unknown()) {
      ++unknown;
      continue;
    }
    if (res.sat() != expected) ++disagreements;
    if (res.sat()) {
      ++sat;
      if (!evaluate(f, res.witness)) ++unsound;
    }
  }

  // The system with variable moduli, against a scan of |x|, |y| <= 2000.
  Formula moduli = parse_formula("3x %= 3 mod y; 5y %= 7 mod x; 2x = y - 18");
  bool moduli_expected = false;
  for (Int x = -2000; x <= 2000 && !moduli_expected; ++x)
    for (Int y = -2000; y <= 2000 && !moduli_expected; ++y)
      moduli_expected = 2 * x == y - 18 && evaluate(moduli, {{"x", x}, {"y", y}});
  auto pr = solve(moduli);
  bool moduli_ok = pr.unknown() || (pr.sat() == moduli_expected && (!pr.sat() || evaluate(moduli, pr.witness)));

  std::string detail = std::to_string(rounds) + " conjunctions (" + std::to_string(sat) + " sat), " +
                       std::to_string(disagreements) + " disagreements, " + std::to_string(unsound) +
                       " unsound, " + std::to_string(unknown) + " unknown; variable-modulus system " +
                       to_string(pr.status) + (moduli_ok ? " as scanned" : " against the scan");
  return {disagreements == 0 && unsound == 0 && unknown == 0 && moduli_ok, detail};
}

}  // namespace acceptance
