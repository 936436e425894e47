#include <random>

#include "doctest.h"
#include "sla/epad.hpp"

using namespace sla;
using namespace sla::epad;

namespace {

LinearTerm v(const char* n, Int c = 1) { return LinearTerm::var(n, c); }

// Exhaustive search over a box; the formula must bound its own variables to it.
std::optional<Valuation> scan(const Formula& f, const std::vector<std::string>& vars, Int box) {
  Valuation val;
  for (const auto& n : vars) val[n] = -box;
  while (true) {
    if (evaluate(f, val)) return val;
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (val[vars[i]] < box) {
        ++val[vars[i]];
        break;
      }
      val[vars[i]] = -box;
    }
    if (i == vars.size()) return std::nullopt;
  }
}

Formula boxed(Formula f, const std::vector<std::string>& vars, Int box) {
  std::vector<Formula> parts{std::move(f)};
  for (const auto& n : vars) {
    parts.push_back(Formula::le(LinearTerm(-box), LinearTerm::var(n)));
    parts.push_back(Formula::le(LinearTerm::var(n), LinearTerm(box)));
  }
  return Formula::conj(parts);
}

}  // namespace

TEST_CASE("evaluate follows the zero-divisor convention") {
  CHECK(evaluate(Formula::divides(0, 0), {}));
  CHECK_FALSE(evaluate(Formula::divides(0, 3), {}));
  CHECK(evaluate(Formula::divides(-3, 6), {}));
  CHECK(evaluate(Formula::congruent(v("x"), 1, 4), {{"x", -3}}));
  CHECK_THROWS_AS(evaluate(Formula::le(v("x"), 0), {}), Error);
}

TEST_CASE("variable-modulus system under a candidate valuation") {
  Formula f = Formula::conj({Formula::congruent(v("x", 3), 3, v("y")), Formula::congruent(v("y", 5), 7, v("x")),
                             Formula::eq(v("x", 2), v("y") - 18)});
  CHECK(evaluate(f, {{"x", 1}, {"y", 20}}));
  CHECK_FALSE(evaluate(f, {{"x", 2}, {"y", 22}}));
}

TEST_CASE("dnf keeps negated divisibility as a literal") {
  Formula f = (Formula::le(v("x"), 1) || Formula::eq(v("y"), 2)) && !Formula::divides(3, v("x"));
  auto d = to_dnf(f);
  REQUIRE(d.size() == 2);
  for (const auto& c : d) {
    REQUIRE(c.size() == 2);
    CHECK(c[1].kind() == Formula::Kind::Not);
  }
  Formula g = !Formula::eq(v("x"), 0);
  CHECK(to_dnf(g).size() == 2);
}

TEST_CASE("dnf is equivalent to the formula") {
  Formula f = !(Formula::le(v("x"), v("y")) && (Formula::divides(2, v("x")) || !Formula::eq(v("y"), 3)));
  auto d = to_dnf(f);
  for (Int x = -5; x <= 5; ++x)
    for (Int y = -5; y <= 5; ++y) {
      Valuation val{{"x", x}, {"y", y}};
      bool any = false;
      for (const auto& c : d) any = any || evaluate(Formula::conj(c), val);
      CHECK(any == evaluate(f, val));
    }
}

TEST_CASE("conjunction procedure on small hand cases") {
  using K = Constraint::Kind;
  auto w = solve_conjunction({{K::Divides, v("x", 2) + 1, 3}, {K::LeZero, -v("x") + 10, 0}, {K::LeZero, v("x") - 12, 0}});
  REQUIRE(w);
  CHECK((*w)["x"] == 10);
  CHECK_FALSE(solve_conjunction({{K::EqZero, v("x", 2) - 1, 0}}));
  CHECK_FALSE(solve_conjunction({{K::Divides, v("x", 4) + 2, 8}, {K::Divides, v("x") - 1, 2}}));
  auto u = solve_conjunction({{K::Divides, v("x"), 6}, {K::Divides, v("x") - 2, 4}});
  REQUIRE(u);
  CHECK(((*u)["x"] % 6 == 0 && ((*u)["x"] - 2) % 4 == 0));
}

TEST_CASE("constant-divisor formulas agree with exhaustive search") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-4, 4), cst(-12, 12), mod(2, 6), kind(0, 4);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int round = 0; round < 300; ++round) {
    std::vector<Formula> lits;
    int n = 1 + round % 4;
    for (int i = 0; i < n; ++i) {
      LinearTerm t(cst(rng));
      for (const auto& name : names) t += LinearTerm::var(name, coef(rng));
      switch (kind(rng)) {
        case 0:
          lits.push_back(Formula::le(t, 0));
          break;
        case 1:
          lits.push_back(Formula::eq(t, 0));
          break;
        case 2:
          lits.push_back(Formula::divides(mod(rng), t));
          break;
        case 3:
          lits.push_back(!Formula::divides(mod(rng), t));
          break;
        default:
          lits.push_back(Formula::le(t, 0) || Formula::divides(mod(rng), t + 1));
      }
    }
    Formula f = boxed(Formula::conj(lits), names, 6);
    auto r = solve(f);
    auto expected = scan(f, names, 6);
    INFO("formula: " << f.to_string());
    REQUIRE_FALSE(r.unknown());
    CHECK(r.sat() == expected.has_value());
    if (r.sat()) CHECK(evaluate(f, r.witness));
  }
}

TEST_CASE("variable divisors with a finite domain are decided completely") {
  // d | 12, d >= 1, d != 1, d does not divide x, x in [0, 3]
  Formula f = Formula::conj({Formula::divides(v("d"), 12), Formula::le(2, v("d")), !Formula::divides(v("d"), v("x")),
                             Formula::le(0, v("x")), Formula::le(v("x"), 3), Formula::divides(v("d"), v("x") + 3)});
  auto r = solve(f);
  REQUIRE(r.sat());
  CHECK(evaluate(f, r.witness));

  Formula g = Formula::conj({Formula::divides(v("d"), 7), Formula::le(2, v("d")), Formula::le(v("d"), 6)});
  CHECK(solve(g).unsat());
}

TEST_CASE("unbounded variable divisors report UNKNOWN with the cap, never UNSAT") {
  // no d >= 1 divides both x and x + 1 except 1; excluded by d >= 2
  Formula f = Formula::conj({Formula::le(2, v("d")), Formula::divides(v("d"), v("x")), Formula::divides(v("d"), v("x") + 1)});
  SolveConfig cfg;
  cfg.char_search_cap = 10;
  auto r = solve(f, cfg);
  CHECK(r.unknown());
  CHECK(r.bound == 10);

  Formula g = Formula::conj({Formula::le(2, v("d")), Formula::divides(v("d"), v("x", 3)), !Formula::divides(v("d"), v("x"))});
  auto s = solve(g, cfg);
  REQUIRE(s.sat());
  CHECK(evaluate(g, s.witness));
}

TEST_CASE("relaxation refutes variable-divisor formulas whose linear part is infeasible") {
  Formula f = Formula::conj({Formula::divides(v("d"), v("x")), Formula::le(v("x"), 0), Formula::le(1, v("x"))});
  CHECK(solve(f).unsat());
}

TEST_CASE("zero divisors") {
  CHECK(solve(Formula::conj({Formula::divides(v("d"), 5), Formula::eq(v("d"), 0)})).unsat());
  auto r = solve(Formula::conj({Formula::divides(v("d"), v("x")), Formula::eq(v("d"), 0)}));
  REQUIRE(r.sat());
  CHECK(r.witness["x"] == 0);
  CHECK(solve(Formula::conj({!Formula::divides(0, v("x")), Formula::eq(v("x"), 0)})).unsat());
}

TEST_CASE("variable-modulus system agrees with an exhaustive scan") {
  Formula f = parse_formula("3x %= 3 mod y; 5y %= 7 mod x; 2x = y - 18");
  bool found = false;
  for (Int x = -2000; x <= 2000 && !found; ++x) {
    Int y = 2 * x + 18;
    if (y < -2000 || y > 2000) continue;
    found = evaluate(f, {{"x", x}, {"y", y}});
  }
  auto r = solve(f);
  CHECK(found);
  REQUIRE(r.sat());
  CHECK(evaluate(f, r.witness));
}

TEST_CASE("parser") {
  Formula f = parse_formula(
      "# comment\n"
      "x + 2*y <= 3 & !(x = 1)\n"
      "(x < 0 or 3 | x - 1); -x >= -10\n");
  CHECK(evaluate(f, {{"x", -2}, {"y", 0}}));
  CHECK_FALSE(evaluate(f, {{"x", 1}, {"y", 0}}));
  CHECK(evaluate(f, {{"x", 4}, {"y", -1}}));
  CHECK_FALSE(evaluate(f, {{"x", 11}, {"y", -10}}));

  Formula g = parse_formula("(x + 1) | 2(y - 1)");
  CHECK(evaluate(g, {{"x", 2}, {"y", 4}}));
  CHECK_FALSE(evaluate(g, {{"x", 3}, {"y", 4}}));

  Formula h = parse_formula("x != 3 and true");
  CHECK(evaluate(h, {{"x", 2}}));
  CHECK_FALSE(evaluate(h, {{"x", 3}}));

  CHECK_THROWS_AS(parse_formula("x * y = 1"), ParseError);
  CHECK_THROWS_AS(parse_formula("x <= "), ParseError);
  CHECK_THROWS_AS(parse_formula("x @ 1"), ParseError);
  try {
    parse_formula("x = 1\ny <=");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("printing round-trips through the parser") {
  Formula f = parse_formula("2x - y <= 3 & (4 | x + 1 or !(y = 2))");
  Formula g = parse_formula(f.to_string());
  for (Int x = -6; x <= 6; ++x)
    for (Int y = -6; y <= 6; ++y) {
      Valuation val{{"x", x}, {"y", y}};
      CHECK(evaluate(f, val) == evaluate(g, val));
    }
}
