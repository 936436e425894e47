// Complete decision procedure for conjunctions of linear constraints with
// constant moduli.
//
// Equalities are eliminated first (scaling by the pivot coefficient and
// remembering the divisibility side condition). Remaining variables are
// eliminated one at a time: if some solution exists, the least one lies within
// one period of the largest lower bound, so it suffices to branch over each
// lower bound, the rounding remainder of its ceiling, and an offset below the
// period of the divisibility constraints. When a variable is unbounded on one
// side, its bounds are dropped and only the period is enumerated.

#include <algorithm>

#include "epad_internal.hpp"

namespace sla::epad {
namespace detail {

namespace {

using Kind = Constraint::Kind;

void fill_missing(Valuation& val, const LinearTerm& t) {
  for (const auto& [name, _] : t.coefficients()) val.try_emplace(name, 0);
}

class Eliminator {
 public:
  explicit Eliminator(Budget& budget) : budget_(budget) {}

  std::optional<Valuation> run(std::vector<Constraint> cs) {
    budget_.tick();
    if (!normalize_all(cs)) return std::nullopt;

    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i].kind == Kind::EqZero) return eliminate_equality(std::move(cs), i);

    std::set<std::string> vars;
    for (const auto& c : cs)
      for (const auto& [name, _] : c.term.coefficients()) vars.insert(name);
    if (vars.empty()) return Valuation{};

    const std::string x = pick_variable(cs, vars);
    return eliminate(std::move(cs), x);
  }

 private:
  Budget& budget_;

  static bool normalize_all(std::vector<Constraint>& cs) {
    std::vector<Constraint> out;
    out.reserve(cs.size());
    for (auto& c : cs) {
      auto r = normalize(c);
      if (r == Normalized::False) return false;
      if (r == Normalized::Keep) out.push_back(std::move(c));
    }
    cs = std::move(out);
    return true;
  }

  std::optional<Valuation> eliminate_equality(std::vector<Constraint> cs, std::size_t idx) {
    Constraint eq = cs[idx];
    cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(idx));
    std::string x;
    Int a = 0;
    for (const auto& [name, c] : eq.term.coefficients())
      if (a == 0 || arith::abs(c) < arith::abs(a)) {
        x = name;
        a = c;
      }
    LinearTerm rest = eq.term - LinearTerm::var(x, a);  // a*x + rest = 0
    const Int abs_a = arith::abs(a);
    const Int sign_a = a < 0 ? -1 : 1;
    std::vector<Constraint> next;
    next.reserve(cs.size() + 1);
    for (auto& c : cs) {
      Int b = c.term.coefficient(x);
      if (b == 0) {
        next.push_back(std::move(c));
        continue;
      }
      // |a| * (b*x + s) = |a|*s - b*sign(a)*rest
      LinearTerm s = c.term - LinearTerm::var(x, b);
      Constraint n{c.kind, s * abs_a - rest * arith::mul(b, sign_a), c.modulus};
      if (n.kind == Kind::Divides) n.modulus = arith::mul(n.modulus, abs_a);
      next.push_back(std::move(n));
    }
    if (abs_a > 1) next.push_back({Kind::Divides, rest, abs_a});
    auto sub = run(std::move(next));
    if (!sub) return std::nullopt;
    fill_missing(*sub, rest);
    Int r = rest.evaluate(*sub);
    (*sub)[x] = -r / a;
    return sub;
  }

  static Int period_of(const std::vector<Constraint>& cs, const std::string& x) {
    Int period = 1;
    for (const auto& c : cs) {
      if (c.kind != Kind::Divides) continue;
      Int b = c.term.coefficient(x);
      if (b == 0) continue;
      period = arith::lcm(period, c.modulus / arith::gcd(c.modulus, b));
    }
    return period;
  }

  static std::string pick_variable(const std::vector<Constraint>& cs, const std::set<std::string>& vars) {
    std::string best;
    Int best_cost = INT64_MAX;
    for (const auto& x : vars) {
      Int lower = 0, upper = 0;
      bool has_lower = false, has_upper = false;
      for (const auto& c : cs) {
        if (c.kind != Kind::LeZero) continue;
        Int b = c.term.coefficient(x);
        if (b < 0) {
          has_lower = true;
          lower += -b;
        } else if (b > 0) {
          has_upper = true;
          upper += b;
        }
      }
      Int period = period_of(cs, x);
      Int cost = (has_lower && has_upper) ? arith::mul(std::min(lower, upper), period) : period;
      if (cost < best_cost) {
        best_cost = cost;
        best = x;
      }
    }
    return best;
  }

  std::optional<Valuation> eliminate(std::vector<Constraint> cs, const std::string& x) {
    std::vector<Constraint> without, lowers, uppers, divs;
    for (auto& c : cs) {
      Int b = c.term.coefficient(x);
      if (b == 0)
        without.push_back(std::move(c));
      else if (c.kind == Kind::Divides)
        divs.push_back(std::move(c));
      else if (b < 0)
        lowers.push_back(std::move(c));
      else
        uppers.push_back(std::move(c));
    }
    const Int period = period_of(divs, x);

    if (lowers.empty() || uppers.empty()) {
      for (Int j = 0; j < period; ++j) {
        std::vector<Constraint> next = without;
        for (const auto& d : divs) next.push_back({d.kind, d.term.substitute(x, LinearTerm(j)), d.modulus});
        auto sub = run(std::move(next));
        if (!sub) continue;
        for (const auto& c : lowers) fill_missing(*sub, c.term);
        for (const auto& c : uppers) fill_missing(*sub, c.term);
        sub->erase(x);
        Int value = j;
        if (!uppers.empty()) {
          Int ub = INT64_MAX;
          for (const auto& c : uppers) {
            Int b = c.term.coefficient(x);
            Int s = (c.term - LinearTerm::var(x, b)).evaluate(*sub);
            ub = std::min(ub, arith::floor_div(-s, b));
          }
          value = arith::sub(ub, arith::mod(arith::sub(ub, j), period));
        } else if (!lowers.empty()) {
          Int lb = INT64_MIN;
          for (const auto& c : lowers) {
            Int b = c.term.coefficient(x);
            Int s = (c.term - LinearTerm::var(x, b)).evaluate(*sub);
            lb = std::max(lb, arith::ceil_div(s, -b));
          }
          value = arith::add(lb, arith::mod(arith::sub(j, lb), period));
        }
        (*sub)[x] = value;
        return sub;
      }
      return std::nullopt;
    }

    Int lower_weight = 0, upper_weight = 0;
    for (const auto& c : lowers) lower_weight += -c.term.coefficient(x);
    for (const auto& c : uppers) upper_weight += c.term.coefficient(x);
    const bool use_lower = lower_weight <= upper_weight;
    const auto& pivots = use_lower ? lowers : uppers;

    std::vector<Constraint> with_x = lowers;
    with_x.insert(with_x.end(), uppers.begin(), uppers.end());
    with_x.insert(with_x.end(), divs.begin(), divs.end());

    for (const auto& p : pivots) {
      const Int c = arith::abs(p.term.coefficient(x));
      // lower pivot: -c*x + s <= 0, x >= s/c, x = (s + r)/c + j
      // upper pivot:  c*x + s <= 0, x <= -s/c, x = (-s - r)/c - j
      const LinearTerm s = p.term - LinearTerm::var(x, p.term.coefficient(x));
      const LinearTerm bound = use_lower ? s : -s;
      for (Int r = 0; r < c; ++r) {
        const LinearTerm base = use_lower ? bound + r : bound - r;  // c divides base
        for (Int j = 0; j < period; ++j) {
          // c*x = base + sign*c*j
          const LinearTerm cx = base + LinearTerm(arith::mul(use_lower ? j : -j, c));
          std::vector<Constraint> next = without;
          if (c > 1) next.push_back({Kind::Divides, base, c});
          for (const auto& w : with_x) {
            Int a = w.term.coefficient(x);
            LinearTerm rest = w.term - LinearTerm::var(x, a);
            Constraint n{w.kind, rest * c + cx * a, w.modulus};
            if (n.kind == Kind::Divides) n.modulus = arith::mul(n.modulus, c);
            next.push_back(std::move(n));
          }
          auto sub = run(std::move(next));
          if (!sub) continue;
          fill_missing(*sub, cx);
          sub->erase(x);
          (*sub)[x] = cx.evaluate(*sub) / c;
          return sub;
        }
      }
    }
    return std::nullopt;
  }
};

}  // namespace

Normalized normalize(Constraint& c) {
  auto& t = c.term;
  switch (c.kind) {
    case Kind::Divides: {
      if (c.modulus == 0) {
        c.kind = Kind::EqZero;
        return normalize(c);
      }
      Int m = arith::abs(c.modulus);
      if (m == 1) return Normalized::True;
      LinearTerm reduced(arith::mod(t.constant(), m));
      Int g = m;
      for (const auto& [name, coeff] : t.coefficients()) {
        Int r = arith::mod(coeff, m);
        if (r != 0) {
          reduced += LinearTerm::var(name, r);
          g = arith::gcd(g, r);
        }
      }
      if (reduced.is_constant()) return reduced.constant() == 0 ? Normalized::True : Normalized::False;
      if (reduced.constant() % g != 0) return Normalized::False;
      if (g > 1) {
        LinearTerm scaled(reduced.constant() / g);
        for (const auto& [name, coeff] : reduced.coefficients()) scaled += LinearTerm::var(name, coeff / g);
        reduced = scaled;
        m /= g;
        if (m == 1) return Normalized::True;
      }
      c.term = reduced;
      c.modulus = m;
      return Normalized::Keep;
    }
    case Kind::LeZero:
    case Kind::EqZero: {
      if (t.is_constant()) {
        bool ok = c.kind == Kind::LeZero ? t.constant() <= 0 : t.constant() == 0;
        return ok ? Normalized::True : Normalized::False;
      }
      Int g = 0;
      for (const auto& [_, coeff] : t.coefficients()) g = arith::gcd(g, coeff);
      if (g > 1) {
        Int k;
        if (c.kind == Kind::EqZero) {
          if (t.constant() % g != 0) return Normalized::False;
          k = t.constant() / g;
        } else {
          k = arith::ceil_div(t.constant(), g);
        }
        LinearTerm scaled(k);
        for (const auto& [name, coeff] : t.coefficients()) scaled += LinearTerm::var(name, coeff / g);
        c.term = scaled;
      }
      return Normalized::Keep;
    }
  }
  return Normalized::Keep;
}

std::optional<Valuation> decide_conjunction(const std::vector<Constraint>& constraints, Budget& budget) {
  Eliminator e(budget);
  auto result = e.run(constraints);
  if (!result) return std::nullopt;
  for (const auto& c : constraints) fill_missing(*result, c.term);
  for (const auto& c : constraints) {
    Int v = c.term.evaluate(*result);
    bool ok = c.kind == Kind::LeZero ? v <= 0 : c.kind == Kind::EqZero ? v == 0 : arith::divides(c.modulus, v);
    if (!ok) throw Error("internal error: conjunction witness fails " + c.term.to_string());
  }
  return result;
}

}  // namespace detail

std::optional<Valuation> solve_conjunction(const std::vector<Constraint>& constraints) {
  detail::Budget budget;
  return detail::decide_conjunction(constraints, budget);
}

}  // namespace sla::epad
