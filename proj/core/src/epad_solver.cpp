// Layered search over negation-normal-form formulas.
//
// The formula is simplified on every search node: constants fold, equalities
// with a unit coefficient are substituted away, and divisibility by a constant
// in negated position is expanded into its nonzero residues. What remains is
// either a tree whose divisors are all constant (decided completely by a DFS
// over disjunctions with conjunction-level pruning) or one that still has a
// variable divisor, which triggers a case split on that variable.

#include <algorithm>
#include <functional>

#include "epad_internal.hpp"

namespace sla::epad {

namespace {

using detail::Budget;

struct Lit {
  enum class K { Le, Eq, Div, NotDiv };  // term <= 0, term = 0, div | term, not div | term
  K k;
  LinearTerm term;
  LinearTerm div;
};

struct Node {
  enum class K { True, False, Lit, And, Or };
  K k = K::True;
  Lit lit{Lit::K::Le, {}, {}};
  std::vector<Node> kids;

  static Node truth(bool b) { return Node{b ? K::True : K::False, {Lit::K::Le, {}, {}}, {}}; }
  static Node of(Lit l) { return Node{K::Lit, std::move(l), {}}; }
  static Node group(K k, std::vector<Node> kids) { return Node{k, {Lit::K::Le, {}, {}}, std::move(kids)}; }
};

// x := num / den, applied in reverse order to rebuild a witness.
struct Def {
  std::string var;
  LinearTerm num;
  Int den = 1;
};

Node from_formula(const Formula& f, bool negated) {
  using FK = Formula::Kind;
  switch (f.kind()) {
    case FK::True:
      return Node::truth(!negated);
    case FK::False:
      return Node::truth(negated);
    case FK::Not:
      return from_formula(f.children().front(), !negated);
    case FK::And:
    case FK::Or: {
      std::vector<Node> kids;
      for (const auto& k : f.children()) kids.push_back(from_formula(k, negated));
      bool is_and = (f.kind() == FK::And) != negated;
      return Node::group(is_and ? Node::K::And : Node::K::Or, std::move(kids));
    }
    case FK::Atom: {
      const Atom& a = f.as_atom();
      LinearTerm d = a.lhs - a.rhs;
      switch (a.rel) {
        case Relation::Le:
          return negated ? Node::of({Lit::K::Le, -d + 1, {}}) : Node::of({Lit::K::Le, d, {}});
        case Relation::Eq:
          if (!negated) return Node::of({Lit::K::Eq, d, {}});
          return Node::group(Node::K::Or, {Node::of({Lit::K::Le, d + 1, {}}), Node::of({Lit::K::Le, -d + 1, {}})});
        case Relation::Divides:
          return Node::of({negated ? Lit::K::NotDiv : Lit::K::Div, a.rhs, a.lhs});
      }
    }
  }
  return Node::truth(true);
}

bool eval_node(const Node& n, const Valuation& v) {
  switch (n.k) {
    case Node::K::True:
      return true;
    case Node::K::False:
      return false;
    case Node::K::And:
      return std::all_of(n.kids.begin(), n.kids.end(), [&](const Node& k) { return eval_node(k, v); });
    case Node::K::Or:
      return std::any_of(n.kids.begin(), n.kids.end(), [&](const Node& k) { return eval_node(k, v); });
    case Node::K::Lit: {
      Int t = n.lit.term.evaluate(v);
      switch (n.lit.k) {
        case Lit::K::Le:
          return t <= 0;
        case Lit::K::Eq:
          return t == 0;
        case Lit::K::Div:
          return arith::divides(n.lit.div.evaluate(v), t);
        case Lit::K::NotDiv:
          return !arith::divides(n.lit.div.evaluate(v), t);
      }
    }
  }
  return false;
}

void collect_vars(const Node& n, std::set<std::string>& out) {
  if (n.k == Node::K::Lit) {
    for (const auto& [name, _] : n.lit.term.coefficients()) out.insert(name);
    for (const auto& [name, _] : n.lit.div.coefficients()) out.insert(name);
  }
  for (const auto& k : n.kids) collect_vars(k, out);
}

void collect_divisor_vars(const Node& n, std::set<std::string>& out) {
  if (n.k == Node::K::Lit && (n.lit.k == Lit::K::Div || n.lit.k == Lit::K::NotDiv))
    for (const auto& [name, _] : n.lit.div.coefficients()) out.insert(name);
  for (const auto& k : n.kids) collect_divisor_vars(k, out);
}

Node substitute(const Node& n, const std::string& var, const LinearTerm& value) {
  if (n.k == Node::K::Lit) {
    Lit l = n.lit;
    l.term = l.term.substitute(var, value);
    l.div = l.div.substitute(var, value);
    return Node::of(std::move(l));
  }
  if (n.kids.empty()) return n;
  std::vector<Node> kids;
  kids.reserve(n.kids.size());
  for (const auto& k : n.kids) kids.push_back(substitute(k, var, value));
  return Node::group(n.k, std::move(kids));
}

// Removes multiples of v from t when v divides (or fails to divide) t.
LinearTerm reduce_by_divisor_var(const LinearTerm& div, const LinearTerm& t) {
  if (div.constant() != 0 || div.coefficients().size() != 1) return t;
  const auto& [v, c] = *div.coefficients().begin();
  if (c != 1 && c != -1) return t;
  return t - LinearTerm::var(v, t.coefficient(v));
}

Node make_and(std::vector<Node> kids);
Node make_or(std::vector<Node> kids);

Node simplify_constraint(Constraint c) {
  auto r = detail::normalize(c);
  if (r != detail::Normalized::Keep) return Node::truth(r == detail::Normalized::True);
  switch (c.kind) {
    case Constraint::Kind::LeZero:
      return Node::of({Lit::K::Le, c.term, {}});
    case Constraint::Kind::EqZero:
      return Node::of({Lit::K::Eq, c.term, {}});
    case Constraint::Kind::Divides:
      return Node::of({Lit::K::Div, c.term, LinearTerm(c.modulus)});
  }
  return Node::truth(true);
}

Node simplify_lit(const Lit& l) {
  switch (l.k) {
    case Lit::K::Le:
      return simplify_constraint({Constraint::Kind::LeZero, l.term, 0});
    case Lit::K::Eq:
      return simplify_constraint({Constraint::Kind::EqZero, l.term, 0});
    case Lit::K::Div: {
      if (l.div.is_constant()) return simplify_constraint({Constraint::Kind::Divides, l.term, l.div.constant()});
      LinearTerm t = reduce_by_divisor_var(l.div, l.term);
      if (t.is_constant() && t.constant() == 0) return Node::truth(true);
      return Node::of({Lit::K::Div, t, l.div});
    }
    case Lit::K::NotDiv: {
      if (l.div.is_constant()) {
        Int m = arith::abs(l.div.constant());
        if (m == 0)
          return make_or({simplify_lit({Lit::K::Le, l.term + 1, {}}), simplify_lit({Lit::K::Le, -l.term + 1, {}})});
        if (m == 1) return Node::truth(false);
        Constraint c{Constraint::Kind::Divides, l.term, m};
        auto r = detail::normalize(c);
        if (r != detail::Normalized::Keep) return Node::truth(r == detail::Normalized::False);
        std::vector<Node> kids;
        for (Int r2 = 1; r2 < c.modulus; ++r2) kids.push_back(Node::of({Lit::K::Div, c.term - r2, LinearTerm(c.modulus)}));
        return make_or(std::move(kids));
      }
      LinearTerm t = reduce_by_divisor_var(l.div, l.term);
      if (t.is_constant() && t.constant() == 0) return Node::truth(false);
      return Node::of({Lit::K::NotDiv, t, l.div});
    }
  }
  return Node::of(l);
}

Node make_and(std::vector<Node> kids) {
  std::vector<Node> kept;
  for (auto& k : kids) {
    if (k.k == Node::K::True) continue;
    if (k.k == Node::K::False) return k;
    if (k.k == Node::K::And)
      for (auto& g : k.kids) kept.push_back(std::move(g));
    else
      kept.push_back(std::move(k));
  }
  if (kept.empty()) return Node::truth(true);
  if (kept.size() == 1) return std::move(kept.front());
  return Node::group(Node::K::And, std::move(kept));
}

Node make_or(std::vector<Node> kids) {
  std::vector<Node> kept;
  for (auto& k : kids) {
    if (k.k == Node::K::False) continue;
    if (k.k == Node::K::True) return k;
    if (k.k == Node::K::Or)
      for (auto& g : k.kids) kept.push_back(std::move(g));
    else
      kept.push_back(std::move(k));
  }
  if (kept.empty()) return Node::truth(false);
  if (kept.size() == 1) return std::move(kept.front());
  return Node::group(Node::K::Or, std::move(kept));
}

Node simplify_once(const Node& n) {
  switch (n.k) {
    case Node::K::True:
    case Node::K::False:
      return n;
    case Node::K::Lit:
      return simplify_lit(n.lit);
    case Node::K::And:
    case Node::K::Or: {
      std::vector<Node> kids;
      kids.reserve(n.kids.size());
      for (const auto& k : n.kids) {
        Node s = simplify_once(k);
        if (n.k == Node::K::And && s.k == Node::K::False) return s;
        if (n.k == Node::K::Or && s.k == Node::K::True) return s;
        kids.push_back(std::move(s));
      }
      return n.k == Node::K::And ? make_and(std::move(kids)) : make_or(std::move(kids));
    }
  }
  return n;
}

// Top-level equality a*v + rest = 0 that can be substituted exactly.
std::optional<Def> pick_definition(const Node& n) {
  auto try_lit = [](const Node& k) -> std::optional<Def> {
    if (k.k != Node::K::Lit || k.lit.k != Lit::K::Eq) return std::nullopt;
    const auto& t = k.lit.term;
    for (const auto& [v, c] : t.coefficients())
      if (c == 1 || c == -1) return Def{v, (t - LinearTerm::var(v, c)) * -c, 1};
    if (t.coefficients().size() == 1) {
      const auto& [v, c] = *t.coefficients().begin();
      return Def{v, LinearTerm(-t.constant()), c};  // normalize guarantees divisibility
    }
    return std::nullopt;
  };
  if (n.k == Node::K::Lit) return try_lit(n);
  if (n.k == Node::K::And)
    for (const auto& k : n.kids)
      if (auto d = try_lit(k)) return d;
  return std::nullopt;
}

Node simplify(const Node& n, std::vector<Def>& defs) {
  Node cur = simplify_once(n);
  while (auto d = pick_definition(cur)) {
    LinearTerm value = d->num;
    if (d->den != 1) value = LinearTerm(d->num.constant() / d->den);
    defs.push_back({d->var, value, 1});
    cur = simplify_once(substitute(cur, d->var, value));
  }
  return cur;
}

std::vector<const Node*> top_level(const Node& n) {
  std::vector<const Node*> out;
  if (n.k == Node::K::And)
    for (const auto& k : n.kids) out.push_back(&k);
  else
    out.push_back(&n);
  return out;
}

struct Outcome {
  SolveResult::Status status = SolveResult::Status::Unsat;
  Valuation witness;
  std::string reason;
  Int bound = 0;
};

Outcome sat_with(Valuation v, const std::vector<Def>& defs) {
  for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
    for (const auto& [name, _] : it->num.coefficients()) v.try_emplace(name, 0);
    v[it->var] = it->num.evaluate(v) / it->den;
  }
  return {SolveResult::Status::Sat, std::move(v), {}, 0};
}

struct Domain {
  std::optional<Int> lo, hi;
  std::optional<std::set<Int>> values;  // from v | k with k != 0

  bool finite() const { return values.has_value() || (lo && hi); }
  bool admits(Int x) const {
    if (lo && x < *lo) return false;
    if (hi && x > *hi) return false;
    return !values || values->count(x);
  }
  std::vector<Int> enumerate() const {
    std::vector<Int> out;
    if (values) {
      for (Int x : *values)
        if (admits(x)) out.push_back(x);
    } else {
      for (Int x = *lo; x <= *hi; ++x) out.push_back(x);
    }
    return out;
  }
  std::size_t size() const {
    if (values) return values->size();
    return static_cast<std::size_t>(*hi < *lo ? 0 : *hi - *lo + 1);
  }
};

Domain domain_of(const Node& n, const std::string& v) {
  Domain d;
  for (const Node* k : top_level(n)) {
    if (k->k != Node::K::Lit) continue;
    const Lit& l = k->lit;
    if (l.k == Lit::K::Le && l.term.coefficients().size() == 1 && l.term.coefficient(v) != 0) {
      Int a = l.term.coefficient(v);
      Int c = l.term.constant();
      if (a > 0) {
        Int ub = arith::floor_div(-c, a);
        d.hi = d.hi ? std::min(*d.hi, ub) : ub;
      } else {
        Int lb = arith::ceil_div(c, -a);
        d.lo = d.lo ? std::max(*d.lo, lb) : lb;
      }
    }
    if (l.k == Lit::K::Div && l.term.is_constant() && l.term.constant() != 0 && l.div.coefficients().size() == 1 &&
        l.div.coefficient(v) != 0) {
      Int a = l.div.coefficient(v);
      Int c = l.div.constant();
      std::set<Int> vals;
      for (Int dv : arith::divisors(l.term.constant()))
        for (Int s : {dv, -dv})
          if ((s - c) % a == 0) vals.insert((s - c) / a);
      if (d.values) {
        std::set<Int> both;
        for (Int x : vals)
          if (d.values->count(x)) both.insert(x);
        d.values = std::move(both);
      } else {
        d.values = std::move(vals);
      }
    }
  }
  return d;
}

class Search {
 public:
  Search(const SolveConfig& cfg, Budget& budget) : cfg_(cfg), budget_(budget) {}

  Outcome run(const Node& input, std::vector<Def> defs) {
    budget_.tick();
    Node n = simplify(input, defs);
    if (n.k == Node::K::False) return {};
    if (n.k == Node::K::True) return sat_with({}, defs);

    std::set<std::string> dvars;
    collect_divisor_vars(n, dvars);
    if (!dvars.empty()) return split(n, dvars, defs);
    // A variable boxed into a few values is cheaper to enumerate than to
    // carry through every disjunction it appears in.
    if (auto v = small_branching_variable(n)) return enumerate(n, *v, defs);
    return constant_search(n, defs);
  }

 private:
  const SolveConfig& cfg_;
  Budget& budget_;

  Outcome split(const Node& n, const std::set<std::string>& dvars, const std::vector<Def>& defs) {
    std::string best;
    std::size_t best_size = SIZE_MAX;
    for (const auto& v : dvars) {
      Domain d = domain_of(n, v);
      if (d.finite() && d.size() < best_size) {
        best_size = d.size();
        best = v;
      }
    }
    if (!best.empty()) return enumerate(n, best, defs);

    // Dropping every variable-divisor literal only weakens the formula.
    Node relaxed = relax(n);
    auto r = run(relaxed, defs);
    if (r.status == SolveResult::Status::Unsat) return r;
    if (r.status == SolveResult::Status::Sat) {
      Valuation w = r.witness;
      std::set<std::string> all;
      collect_vars(n, all);
      for (const auto& v : all) w.try_emplace(v, 0);
      if (eval_node(n, w)) return r;
    }

    const std::string v = *dvars.begin();
    Domain d = domain_of(n, v);
    Outcome unknown{SolveResult::Status::Unknown, {}, "variable divisor '" + v + "' enumerated up to the cap",
                    cfg_.char_search_cap};
    for (Int mag = 0; mag <= cfg_.char_search_cap; ++mag) {
      for (Int x : {mag, -mag}) {
        if (x == -mag && mag == 0) continue;
        if (!d.admits(x)) continue;
        auto o = assign(n, v, x, defs);
        if (o.status == SolveResult::Status::Sat) return o;
        if (o.status == SolveResult::Status::Unknown) unknown = o;
      }
    }
    return unknown;
  }

  static constexpr std::size_t kSmallDomain = 16;

  static std::optional<std::string> small_branching_variable(const Node& n) {
    std::set<std::string> in_ors;
    for (const Node* k : top_level(n))
      if (k->k == Node::K::Or) collect_vars(*k, in_ors);
    std::optional<std::string> best;
    std::size_t best_size = kSmallDomain + 1;
    for (const auto& v : in_ors) {
      Domain d = domain_of(n, v);
      if (d.finite() && d.size() < best_size) {
        best_size = d.size();
        best = v;
      }
    }
    return best;
  }

  Outcome enumerate(const Node& n, const std::string& v, const std::vector<Def>& defs) {
    Outcome unknown;
    bool saw_unknown = false;
    for (Int x : domain_of(n, v).enumerate()) {
      auto o = assign(n, v, x, defs);
      if (o.status == SolveResult::Status::Sat) return o;
      if (o.status == SolveResult::Status::Unknown) {
        saw_unknown = true;
        unknown = o;
      }
    }
    return saw_unknown ? unknown : Outcome{};
  }

  Outcome assign(const Node& n, const std::string& v, Int x, std::vector<Def> defs) {
    defs.push_back({v, LinearTerm(x), 1});
    return run(substitute(n, v, LinearTerm(x)), std::move(defs));
  }

  static Node relax(const Node& n) {
    if (n.k == Node::K::Lit) {
      bool var_div = (n.lit.k == Lit::K::Div || n.lit.k == Lit::K::NotDiv) && !n.lit.div.is_constant();
      return var_div ? Node::truth(true) : n;
    }
    if (n.kids.empty()) return n;
    std::vector<Node> kids;
    for (const auto& k : n.kids) kids.push_back(relax(k));
    return n.k == Node::K::And ? make_and(std::move(kids)) : make_or(std::move(kids));
  }

  static std::vector<Constraint> constraints_of(const std::vector<const Node*>& lits) {
    std::vector<Constraint> cs;
    for (const Node* k : lits) {
      const Lit& l = k->lit;
      switch (l.k) {
        case Lit::K::Le:
          cs.push_back({Constraint::Kind::LeZero, l.term, 0});
          break;
        case Lit::K::Eq:
          cs.push_back({Constraint::Kind::EqZero, l.term, 0});
          break;
        case Lit::K::Div:
          cs.push_back({Constraint::Kind::Divides, l.term, l.div.constant()});
          break;
        case Lit::K::NotDiv:
          throw Error("internal error: negated divisibility survived simplification");
      }
    }
    return cs;
  }

  Outcome constant_search(const Node& n, const std::vector<Def>& defs) {
    std::vector<const Node*> lits;
    std::vector<const Node*> ors;
    for (const Node* k : top_level(n)) (k->k == Node::K::Or ? ors : lits).push_back(k);

    auto base = detail::decide_conjunction(constraints_of(lits), budget_);
    if (!base) return {};
    if (ors.empty()) return sat_with(*base, defs);

    const Node* pick = *std::min_element(ors.begin(), ors.end(),
                                         [](const Node* a, const Node* b) { return a->kids.size() < b->kids.size(); });
    for (const auto& alt : pick->kids) {
      std::vector<Node> parts;
      for (const Node* k : lits) parts.push_back(*k);
      for (const Node* k : ors)
        if (k != pick) parts.push_back(*k);
      parts.push_back(alt);
      auto o = run(make_and(std::move(parts)), defs);
      if (o.status != SolveResult::Status::Unsat) return o;
    }
    return {};
  }
};

std::optional<Valuation> box_search(const Node& n, const std::vector<std::string>& vars, Int box, Budget& budget) {
  Valuation v;
  for (const auto& name : vars) v[name] = -box;
  while (true) {
    budget.tick();
    if (eval_node(n, v)) return v;
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (v[vars[i]] < box) {
        ++v[vars[i]];
        break;
      }
      v[vars[i]] = -box;
    }
    if (i == vars.size()) return std::nullopt;
  }
}

}  // namespace

SolveResult solve(const Formula& f, const SolveConfig& config) {
  Budget budget;
  Node root = from_formula(f, false);
  SolveResult result;
  Outcome o;
  try {
    Search s(config, budget);
    o = s.run(root, {});
  } catch (const detail::BudgetExceeded& e) {
    o = {SolveResult::Status::Unknown, {}, e.what(), 0};
  }

  if (o.status == SolveResult::Status::Unknown && config.witness_box > 0) {
    std::set<std::string> vs;
    collect_vars(root, vs);
    std::vector<std::string> vars(vs.begin(), vs.end());
    Budget box_budget;
    try {
      if (auto w = box_search(root, vars, config.witness_box, box_budget)) o = {SolveResult::Status::Sat, *w, {}, 0};
    } catch (const detail::BudgetExceeded&) {
    }
  }

  result.status = o.status;
  result.reason = o.reason;
  result.bound = o.bound;
  if (o.status == SolveResult::Status::Sat) {
    result.witness = o.witness;
    for (const auto& v : f.variables()) result.witness.try_emplace(v, 0);
    for (auto it = result.witness.begin(); it != result.witness.end();) {
      if (!f.variables().count(it->first))
        it = result.witness.erase(it);
      else
        ++it;
    }
    if (!evaluate(f, result.witness)) throw Error("internal error: solver witness does not satisfy the formula");
  }
  return result;
}

}  // namespace sla::epad
