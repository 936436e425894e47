#include "sla/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace sla {

std::string to_string(const Letter& a) { return a.orbit + ":" + std::to_string(a.value); }

std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += to_string(w[i]);
  }
  return out;
}

const PiecewiseAffineMap& EquivariantDFA::map(const OrbitId& state, const OrbitId& letter) const {
  auto it = transitions.find({state, letter});
  if (it == transitions.end()) throw Error("missing transition for state orbit '" + state + "' and letter orbit '" + letter + "'");
  return it->second;
}

Element step(const EquivariantDFA& d, const Element& q, const Letter& a) {
  Element src = canonicalize(q, d.states);
  Int v = arith::mod0(a.value, d.alphabet.characteristic(a.orbit));
  Element image = pw_eval(d.map(src.orbit, a.orbit), arith::sub(src.value, v), d.states);
  return act(image, v, d.states);
}

Element run(const EquivariantDFA& d, const Word& w) {
  Element q = canonicalize(d.initial, d.states);
  for (const auto& a : w) q = step(d, q, a);
  return q;
}

bool accepts(const EquivariantDFA& d, const Word& w) { return d.accepting.count(run(d, w).orbit) > 0; }

namespace {

template <typename Successors>
std::set<OrbitId> fixpoint(std::set<OrbitId> current, Successors successors, std::size_t* iterations) {
  std::size_t rounds = 0;
  while (true) {
    ++rounds;
    std::set<OrbitId> next = current;
    for (const auto& tau : current) successors(tau, next);
    if (next == current) break;
    current = std::move(next);
  }
  if (iterations) *iterations = rounds;
  return current;
}

}  // namespace

std::set<OrbitId> reachable_orbits(const EquivariantDFA& d, std::size_t* iterations) {
  return fixpoint(
      {d.initial.orbit},
      [&](const OrbitId& tau, std::set<OrbitId>& out) {
        for (const auto& alpha : d.alphabet.orbits())
          for (const auto& p : d.map(tau, alpha.id).pieces) out.insert(p.target);
      },
      iterations);
}

std::set<OrbitId> reachable_orbits(const EquivariantNFA& n, std::size_t* iterations) {
  return fixpoint(
      n.initial,
      [&](const OrbitId& tau, std::set<OrbitId>& out) {
        for (const auto& [key, rel] : n.transitions)
          if (std::get<0>(key) == tau && !lsu_is_empty(rel)) out.insert(std::get<2>(key));
      },
      iterations);
}

namespace {

template <typename A>
bool meets_accepting(const A& a) {
  auto r = reachable_orbits(a);
  return std::any_of(r.begin(), r.end(), [&](const OrbitId& o) { return a.accepting.count(o) > 0; });
}

}  // namespace

bool is_empty(const EquivariantDFA& d) { return !meets_accepting(d); }
bool is_empty(const EquivariantNFA& n) { return !meets_accepting(n); }

std::optional<Word> find_word(const EquivariantDFA& d) {
  // Breadth-first search over orbits, remembering which piece led where.
  struct Via {
    OrbitId from;
    OrbitId letter;
    Int difference;  // a point of the piece's domain
  };
  std::map<OrbitId, std::optional<Via>> parent;
  std::deque<OrbitId> queue{d.initial.orbit};
  parent[d.initial.orbit] = std::nullopt;
  std::optional<OrbitId> goal;
  while (!queue.empty()) {
    OrbitId tau = queue.front();
    queue.pop_front();
    if (d.accepting.count(tau)) {
      goal = tau;
      break;
    }
    for (const auto& alpha : d.alphabet.orbits())
      for (const auto& p : d.map(tau, alpha.id).pieces)
        if (!parent.count(p.target)) {
          parent[p.target] = Via{tau, alpha.id, p.domain.base};
          queue.push_back(p.target);
        }
  }
  if (!goal) return std::nullopt;

  std::vector<Via> path;
  for (OrbitId o = *goal; parent[o]; o = parent[o]->from) path.push_back(*parent[o]);
  std::reverse(path.begin(), path.end());

  Word w;
  Element q = canonicalize(d.initial, d.states);
  for (const auto& via : path) {
    // Choose v with value(q) - v equal to the piece point.
    Letter a{via.letter, arith::mod0(arith::sub(q.value, via.difference), d.alphabet.characteristic(via.letter))};
    w.push_back(a);
    q = step(d, q, a);
  }
  if (!accepts(d, w)) throw Error("internal error: witness word is rejected");
  return w;
}

EquivariantDFA trim(const EquivariantDFA& d) {
  auto keep = reachable_orbits(d);
  EquivariantDFA out;
  for (const auto& o : d.states.orbits())
    if (keep.count(o.id)) out.states.add(o);
  out.alphabet = d.alphabet;
  out.initial = d.initial;
  for (const auto& [key, m] : d.transitions)
    if (keep.count(key.first)) out.transitions.emplace(key, m);
  for (const auto& o : d.accepting)
    if (keep.count(o)) out.accepting.insert(o);
  return out;
}

std::vector<std::string> validate(const EquivariantDFA& d) {
  std::vector<std::string> diags;
  if (!d.states.contains(d.initial.orbit)) {
    diags.push_back("initial state orbit '" + d.initial.orbit + "' is not a state orbit");
  } else if (canonicalize(d.initial, d.states) != d.initial) {
    diags.push_back("initial value " + std::to_string(d.initial.value) + " is not canonical");
  }
  for (const auto& o : d.accepting)
    if (!d.states.contains(o)) diags.push_back("accepting orbit '" + o + "' is not a state orbit");
  for (const auto& [key, m] : d.transitions)
    if (!d.states.contains(key.first) || !d.alphabet.contains(key.second))
      diags.push_back("transition for unknown pair ('" + key.first + "', '" + key.second + "')");

  for (const auto& tau : d.states.orbits()) {
    for (const auto& alpha : d.alphabet.orbits()) {
      auto it = d.transitions.find({tau.id, alpha.id});
      const std::string where = " (state '" + tau.id + "', letter '" + alpha.id + "')";
      if (it == d.transitions.end()) {
        diags.push_back("missing transition" + where);
        continue;
      }
      const auto& m = it->second;
      if (m.source_orbit != tau.id) {
        diags.push_back("map source '" + m.source_orbit + "' does not match" + where);
        continue;
      }
      if (auto err = check_partition(m, d.states)) {
        diags.push_back(*err + where);
        continue;
      }
      const Int l = alpha.characteristic;
      if (l >= 1) {
        for (Int x : agreement_points(m, d.states, m, d.states, l)) {
          Element lhs = pw_eval(m, arith::add(x, l), d.states);
          Element rhs = act(pw_eval(m, x, d.states), l, d.states);
          if (lhs != rhs) {
            diags.push_back("map does not commute with translation by " + std::to_string(l) + " at x = " +
                            std::to_string(x) + where);
            break;
          }
        }
      }
    }
  }
  return diags;
}

std::vector<std::string> validate(const EquivariantNFA& n) {
  std::vector<std::string> diags;
  for (const auto& o : n.initial)
    if (!n.states.contains(o)) diags.push_back("initial orbit '" + o + "' is not a state orbit");
  for (const auto& o : n.accepting)
    if (!n.states.contains(o)) diags.push_back("accepting orbit '" + o + "' is not a state orbit");
  for (const auto& [key, rel] : n.transitions) {
    const auto& [from, letter, to] = key;
    if (!n.states.contains(from) || !n.alphabet.contains(letter) || !n.states.contains(to))
      diags.push_back("relation for unknown triple ('" + from + "', '" + letter + "', '" + to + "')");
    if (rel.dimension != 2) diags.push_back("relation ('" + from + "', '" + letter + "', '" + to + "') must have dimension 2");
    for (const auto& c : rel.components) {
      bool ok = c.base.size() == rel.dimension;
      for (const auto& p : c.periods) ok = ok && p.size() == rel.dimension;
      if (!ok) diags.push_back("linear set with inconsistent dimension in ('" + from + "', '" + letter + "', '" + to + "')");
    }
  }
  return diags;
}

namespace {

struct Matching {
  std::map<OrbitId, OrbitId> image;  // orbit of a -> orbit of b
  std::map<OrbitId, Int> shift;      // translation applied to values
  std::set<OrbitId> used;
};

bool assign(Matching& m, const EquivariantDFA& a, const EquivariantDFA& b, const OrbitId& x, const OrbitId& y, Int s) {
  auto it = m.image.find(x);
  if (it != m.image.end()) {
    if (it->second != y) return false;
    Int k = a.states.characteristic(x);
    return arith::mod0(arith::sub(m.shift[x], s), k) == 0;
  }
  if (m.used.count(y)) return false;
  if (a.states.characteristic(x) != b.states.characteristic(y)) return false;
  if (a.accepting.count(x) != b.accepting.count(y)) return false;
  m.image[x] = y;
  m.shift[x] = arith::mod0(s, a.states.characteristic(x));
  m.used.insert(y);
  return true;
}

// Extends the matching along transitions until it closes or conflicts.
bool propagate(Matching& m, const EquivariantDFA& a, const EquivariantDFA& b) {
  std::deque<OrbitId> work;
  for (const auto& [x, _] : m.image) work.push_back(x);
  std::set<OrbitId> done;
  while (!work.empty()) {
    OrbitId x = work.front();
    work.pop_front();
    if (!done.insert(x).second) continue;
    const OrbitId y = m.image[x];
    const Int s = m.shift[x];
    for (const auto& alpha : a.alphabet.orbits()) {
      const auto& ma = a.map(x, alpha.id);
      const auto& mb = b.map(y, alpha.id);
      for (Int d : agreement_points(ma, a.states, mb, b.states, s)) {
        Element ea = pw_eval(ma, d, a.states);
        Element eb = pw_eval(mb, arith::add(d, s), b.states);
        if (!assign(m, a, b, ea.orbit, eb.orbit, arith::sub(eb.value, ea.value))) return false;
        if (!done.count(ea.orbit)) work.push_back(ea.orbit);
      }
    }
  }
  return true;
}

}  // namespace

bool isomorphic(const EquivariantDFA& a, const EquivariantDFA& b) {
  if (a.alphabet != b.alphabet) return false;
  if (a.states.size() != b.states.size() || a.accepting.size() != b.accepting.size()) return false;
  Matching m;
  if (!assign(m, a, b, a.initial.orbit, b.initial.orbit, arith::sub(b.initial.value, a.initial.value))) return false;
  if (!propagate(m, a, b)) return false;

  // Orbits unreachable from the initial state are matched by backtracking.
  std::function<bool(Matching)> extend = [&](Matching cur) {
    auto free = std::find_if(a.states.orbits().begin(), a.states.orbits().end(),
                             [&](const Orbit& o) { return !cur.image.count(o.id); });
    if (free == a.states.orbits().end()) return true;
    for (const auto& cand : b.states.orbits()) {
      Matching next = cur;
      if (!assign(next, a, b, free->id, cand.id, 0)) continue;
      if (propagate(next, a, b) && extend(next)) return true;
    }
    return false;
  };
  return extend(m);
}

}  // namespace sla
