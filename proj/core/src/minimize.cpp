#include "sla/minimize.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pair_analysis.hpp"

namespace sla {

using epad::Formula;
using epad::LinearTerm;

std::string char_variable(const OrbitId& representative) { return "char_" + representative; }
std::string diff_variable(const OrbitId& orbit) { return "diff_" + orbit; }

namespace {

class Encoder {
 public:
  Encoder(const EquivariantDFA& d, const EquivalenceType& sim) : d_(d), sim_(sim) {}

  Formula encode(bool nontrivial) {
    std::vector<Formula> parts;
    for (std::size_t c = 0; c < sim_.classes.size(); ++c) {
      LinearTerm ch = char_of_class(c);
      parts.push_back(Formula::ge(ch, 0));
      for (const auto& id : sim_.classes[c])
        if (Int k = d_.states.characteristic(id); k != 0) parts.push_back(Formula::divides(ch, k));
      // Offsets only matter modulo a nonzero characteristic.
      for (const auto& id : sim_.classes[c]) {
        if (id == sim_.representative(c)) continue;
        LinearTerm off = offset(id);
        parts.push_back(Formula::eq(ch, 0) || (Formula::ge(off, 0) && Formula::lt(off, ch)));
      }
    }
    if (nontrivial) parts.push_back(nontriviality());

    const auto& orbits = d_.states.orbits();
    for (const auto& alpha : d_.alphabet.orbits()) {
      for (std::size_t i = 0; i < orbits.size(); ++i) {
        const OrbitId& tau = orbits[i].id;
        const auto& m = d_.map(tau, alpha.id);
        parts.push_back(in_shift_set(m, m, char_of(tau)));
        for (std::size_t j = i + 1; j < orbits.size(); ++j) {
          const OrbitId& sigma = orbits[j].id;
          if (!sim_.related(tau, sigma)) continue;
          parts.push_back(in_shift_set(m, d_.map(sigma, alpha.id), offset(sigma) - offset(tau)));
        }
      }
    }
    return Formula::conj(std::move(parts));
  }

 private:
  LinearTerm char_of_class(std::size_t c) const { return LinearTerm::var(char_variable(sim_.representative(c))); }
  LinearTerm char_of(const OrbitId& id) const { return char_of_class(sim_.class_of(id)); }
  LinearTerm offset(const OrbitId& id) const {
    if (sim_.representative(sim_.class_of(id)) == id) return 0;
    return LinearTerm::var(diff_variable(id));
  }

  Formula nontriviality() const {
    std::vector<Formula> any;
    for (std::size_t c = 0; c < sim_.classes.size(); ++c) {
      if (sim_.classes[c].size() > 1) return Formula::truth(true);
      const Int k = d_.states.characteristic(sim_.classes[c].front());
      any.push_back(k == 0 ? Formula::ge(char_of_class(c), 1) : Formula::ne(char_of_class(c), k));
    }
    return Formula::disj(std::move(any));
  }

  // delta lies in the shift set of (f, g) under the signature being solved for.
  Formula in_shift_set(const PiecewiseAffineMap& f, const PiecewiseAffineMap& g, const LinearTerm& delta) {
    std::vector<Formula> all;
    for (const auto& x : lift(f, d_.states))
      for (const auto& y : lift(g, d_.states)) all.push_back(pair_condition(x, y, delta));
    return Formula::conj(std::move(all));
  }

  Formula pair_condition(const LiftedPiece& x, const LiftedPiece& y, const LinearTerm& delta) {
    const bool related = sim_.related(x.target, y.target);
    const LinearTerm ch = related ? char_of(x.target) : LinearTerm(0);
    const LinearTerm dd = related ? offset(y.target) - offset(x.target) : LinearTerm(0);
    const Int L = arith::lcm(x.step, y.step);
    const LinearTerm m = LinearTerm::var("m" + std::to_string(fresh_++));

    std::vector<Formula> cases;
    for (Int d0 = 0; d0 < L; ++d0) {
      Formula pinned = Formula::eq(delta, m * L + d0);
      // Without m the residue alone decides the case, and it folds away as
      // soon as delta is known.
      Formula residue = Formula::divides(L, delta - d0);
      auto geo = detail::pair_geometry(x, y, d0);
      if (!geo) {
        cases.push_back(residue);
        continue;
      }
      const bool uses_m = geo->B != 0 || geo->py || geo->qy;
      std::vector<Formula> shapes;
      for (const auto& lo : bound_choices(geo->px, geo->py, m, true))
        for (const auto& hi : bound_choices(geo->qx, geo->qy, m, false))
          shapes.push_back(lo.side && hi.side && holds(*geo, lo.value, hi.value, m, related, ch, dd));
      cases.push_back((uses_m ? pinned : residue) && Formula::disj(std::move(shapes)));
    }
    return Formula::disj(std::move(cases));
  }

  struct Bound {
    std::optional<LinearTerm> value;
    Formula side;  // when this choice is the active one
  };

  // The u-range bound from X is constant; the one from Y moves as (bound - m).
  static std::vector<Bound> bound_choices(const std::optional<Int>& fixed, const std::optional<Int>& moving,
                                          const LinearTerm& m, bool lower) {
    if (!fixed && !moving) return {{std::nullopt, Formula::truth(true)}};
    if (!moving) return {{LinearTerm(*fixed), Formula::truth(true)}};
    LinearTerm mv = LinearTerm(*moving) - m;
    if (!fixed) return {{mv, Formula::truth(true)}};
    LinearTerm fx(*fixed);
    if (lower) return {{fx, Formula::ge(fx, mv)}, {mv, Formula::gt(mv, fx)}};
    return {{fx, Formula::le(fx, mv)}, {mv, Formula::lt(mv, fx)}};
  }

  static Formula holds(const detail::PairGeometry& g, const std::optional<LinearTerm>& lo,
                       const std::optional<LinearTerm>& hi, const LinearTerm& m, bool related, const LinearTerm& ch,
                       const LinearTerm& dd) {
    Formula empty = lo && hi ? Formula::gt(*lo, *hi) : Formula::truth(false);
    if (!related) return empty;
    Formula single = lo && hi ? Formula::eq(*lo, *hi) : Formula::truth(false);
    Formula several = lo && hi ? Formula::lt(*lo, *hi) : Formula::truth(true);
    LinearTerm anchor = lo ? *lo : hi ? *hi : LinearTerm(0);
    LinearTerm alpha = anchor * g.A + m * g.B + g.C - dd;
    return empty || (single && Formula::divides(ch, alpha)) ||
           (several && Formula::divides(ch, g.A) && Formula::divides(ch, alpha));
  }

  const EquivariantDFA& d_;
  const EquivalenceType& sim_;
  std::size_t fresh_ = 0;
};

void require_partition(const EquivariantDFA& d, const EquivalenceType& sim) {
  std::size_t total = 0;
  for (const auto& cls : sim.classes) {
    if (cls.empty()) throw Error("not a partition of the state orbits: empty class");
    for (const auto& id : cls) {
      if (!d.states.contains(id)) throw Error("not a partition of the state orbits: unknown orbit '" + id + "'");
      if (sim.class_of(id) != static_cast<std::size_t>(&cls - sim.classes.data()) ||
          std::count(cls.begin(), cls.end(), id) != 1)
        throw Error("not a partition of the state orbits: '" + id + "' is listed twice");
    }
    total += cls.size();
  }
  if (total != d.states.size()) throw Error("not a partition of the state orbits: some orbit is missing");
}

}  // namespace

Formula encode_congruence_existence(const EquivariantDFA& d, const EquivalenceType& sim, bool nontrivial) {
  require_partition(d, sim);
  return Encoder(d, sim).encode(nontrivial);
}

EquivalenceSignature decode_congruence(const EquivariantDFA& d, const EquivalenceType& sim, const epad::Valuation& v) {
  auto get = [&](const std::string& name) {
    auto it = v.find(name);
    return it == v.end() ? Int{0} : it->second;
  };
  EquivalenceSignature phi;
  phi.sim = sim;
  for (std::size_t c = 0; c < sim.classes.size(); ++c) {
    const OrbitId& rep = sim.representative(c);
    const Int ch = get(char_variable(rep));
    phi.chars.push_back(ch);
    for (const auto& id : sim.classes[c])
      if (id != rep) phi.diffs[{rep, id}] = arith::mod0(get(diff_variable(id)), ch);
  }
  (void)d;
  return phi;
}

namespace {

// All set partitions of `items` as restricted growth strings.
std::vector<std::vector<std::vector<OrbitId>>> partitions(const std::vector<OrbitId>& items) {
  std::vector<std::vector<std::vector<OrbitId>>> out;
  std::vector<std::vector<OrbitId>> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == items.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(items[i]);
      rec(i + 1);
      cur[b].pop_back();
    }
    cur.push_back({items[i]});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<EquivalenceType> candidate_types(const EquivariantDFA& d) {
  std::vector<OrbitId> acc, rej;
  for (const auto& o : d.states.orbits()) (d.accepting.count(o.id) ? acc : rej).push_back(o.id);
  auto pa = partitions(acc), pr = partitions(rej);
  std::vector<EquivalenceType> out;
  for (const auto& a : pa)
    for (const auto& r : pr) {
      EquivalenceType t;
      t.classes = a;
      t.classes.insert(t.classes.end(), r.begin(), r.end());
      out.push_back(std::move(t));
    }
  std::stable_sort(out.begin(), out.end(),
                   [](const EquivalenceType& x, const EquivalenceType& y) { return x.classes.size() < y.classes.size(); });
  return out;
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "FOUND";
    case SearchStatus::None:
      return "NONE";
    case SearchStatus::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

std::string to_string(Minimality m) {
  switch (m) {
    case Minimality::Yes:
      return "YES";
    case Minimality::No:
      return "NO";
    case Minimality::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

namespace {

void verify_found(const EquivariantDFA& d, const EquivalenceSignature& phi, const char* who) {
  auto diags = check_signature(phi, d.states);
  if (!diags.empty()) throw Error(std::string("internal error: ") + who + " produced an invalid signature: " + diags.front());
  if (!is_congruence(d, phi) || !is_nontrivial(phi, d.states) || !respects_accepting(phi, d))
    throw Error(std::string("internal error: ") + who + " produced " + to_string(phi) +
                ", which is not a nontrivial congruence respecting acceptance");
}

}  // namespace

CongruenceSearch exists_nontrivial_congruence(const EquivariantDFA& d, const epad::SolveConfig& config) {
  CongruenceSearch out;
  for (const auto& sim : candidate_types(d)) {
    epad::SolveResult r = epad::solve(encode_congruence_existence(d, sim), config);
    out.report.candidates.push_back({sim, r.status, r.reason, r.bound});
    if (r.unknown()) out.report.complete = false;
    if (!r.sat()) continue;
    EquivalenceSignature phi = decode_congruence(d, sim, r.witness);
    verify_found(d, phi, "the congruence encoding");
    out.status = SearchStatus::Found;
    out.signature = phi;
    out.report.found = phi;
    return out;
  }
  out.status = out.report.complete ? SearchStatus::None : SearchStatus::Unknown;
  return out;
}

BruteForceResult brute_force_search(const EquivariantDFA& d, const BruteForceBounds& bounds) {
  BruteForceResult out;
  for (const auto& sim : candidate_types(d)) {
    // Characteristic candidates per class.
    std::vector<std::vector<Int>> char_options;
    for (const auto& cls : sim.classes) {
      Int g = 0;
      for (const auto& id : cls) g = arith::gcd(g, d.states.characteristic(id));
      if (g != 0) {
        char_options.push_back(arith::divisors(g));
      } else {
        std::vector<Int> all(static_cast<std::size_t>(bounds.char_cap + 1));
        std::iota(all.begin(), all.end(), 0);
        char_options.push_back(std::move(all));
        out.complete = false;
      }
    }

    EquivalenceSignature phi;
    phi.sim = sim;
    phi.chars.assign(sim.classes.size(), 0);
    // Members after the representative, in order, whose diffs are enumerated.
    std::vector<std::pair<std::size_t, OrbitId>> free;
    for (std::size_t c = 0; c < sim.classes.size(); ++c)
      for (const auto& id : sim.classes[c])
        if (id != sim.representative(c)) free.push_back({c, id});

    std::function<bool(std::size_t)> diffs = [&](std::size_t i) {
      if (i == free.size()) {
        ++out.tested;
        return is_nontrivial(phi, d.states) && is_congruence(d, phi);
      }
      const auto& [c, id] = free[i];
      const Int ch = phi.chars[c];
      if (ch == 0) out.complete = false;
      const Int lo = ch == 0 ? -bounds.diff_cap : 0, hi = ch == 0 ? bounds.diff_cap : ch - 1;
      for (Int v = lo; v <= hi; ++v) {
        phi.diffs[{sim.representative(c), id}] = v;
        if (diffs(i + 1)) return true;
      }
      phi.diffs.erase({sim.representative(c), id});
      return false;
    };
    std::function<bool(std::size_t)> chars = [&](std::size_t c) {
      if (c == sim.classes.size()) return diffs(0);
      for (Int ch : char_options[c]) {
        phi.chars[c] = ch;
        if (chars(c + 1)) return true;
      }
      return false;
    };
    if (chars(0)) {
      verify_found(d, phi, "brute-force search");
      out.signature = phi;
      return out;
    }
  }
  return out;
}

MinimalityResult is_minimal(const EquivariantDFA& d, const epad::SolveConfig& config) {
  MinimalityResult out;
  CongruenceSearch s = exists_nontrivial_congruence(trim(d), config);
  out.report = s.report;
  out.witness = s.signature;
  out.verdict = s.status == SearchStatus::Found ? Minimality::No
                : s.status == SearchStatus::None ? Minimality::Yes
                                                 : Minimality::Unknown;
  return out;
}

namespace {

// Orbit count first, then a weight that drops whenever a characteristic
// moves from 0 to positive or to a proper divisor.
std::pair<std::size_t, Int> measure(const EquivariantDFA& d) {
  Int weight = 0;
  for (const auto& o : d.states.orbits()) {
    if (o.characteristic == 0) {
      weight += 64;
      continue;
    }
    Int k = o.characteristic;
    for (Int p = 2; p * p <= k; ++p)
      while (k % p == 0) {
        k /= p;
        ++weight;
      }
    if (k > 1) ++weight;
  }
  return {d.states.size(), weight};
}

}  // namespace

MinimizeResult minimize(const EquivariantDFA& d, const epad::SolveConfig& config) {
  MinimizeResult out;
  out.automaton = trim(d);
  while (true) {
    CongruenceSearch s = exists_nontrivial_congruence(out.automaton, config);
    out.last_report = s.report;
    if (s.status != SearchStatus::Found) {
      out.proven_minimal = s.status == SearchStatus::None;
      return out;
    }
    EquivariantDFA next = trim(quotient(out.automaton, *s.signature).automaton);
    if (!(measure(next) < measure(out.automaton))) throw Error("internal error: quotient did not shrink the automaton");
    out.trace.push_back({*s.signature, next});
    out.automaton = std::move(next);
  }
}

RefinementTrace partition_refinement(const EquivariantDFA& d, std::size_t max_steps) {
  RefinementTrace out;
  out.steps.push_back(acceptance_signature(d));
  for (std::size_t i = 0; i < max_steps; ++i) {
    EquivalenceSignature next = refine(d, out.steps.back());
    if (next == out.steps.back()) {
      out.stabilized = true;
      break;
    }
    out.steps.push_back(std::move(next));
  }
  return out;
}

}  // namespace sla
