#include <algorithm>

#include "sla/semilinear.hpp"

namespace sla {

namespace {

// A progression as a residue class restricted to a (possibly unbounded) interval.
struct Span {
  Int residue, modulus;
  std::optional<Int> lo, hi;
};

Span span_of(const Progression& p) {
  Span s{arith::mod(p.base, arith::abs(p.step)), arith::abs(p.step), std::nullopt, std::nullopt};
  std::optional<Int> last;
  if (p.count) last = p.at(*p.count - 1);
  if (p.step > 0) {
    s.lo = p.base;
    s.hi = last;
  } else {
    s.hi = p.base;
    s.lo = last;
  }
  return s;
}

}  // namespace

bool Progression::contains(Int x) const {
  Int d = arith::sub(x, base);
  if (d % step != 0) return false;
  Int t = d / step;
  return t >= 0 && (!count || t < *count);
}

std::optional<Progression> progression_intersect(const Progression& p, const Progression& q) {
  Span a = span_of(p), b = span_of(q);
  auto c = arith::crt(a.residue, a.modulus, b.residue, b.modulus);
  if (!c) return std::nullopt;
  std::optional<Int> lo = a.lo, hi = a.hi;
  if (b.lo) lo = lo ? std::max(*lo, *b.lo) : *b.lo;
  if (b.hi) hi = hi ? std::min(*hi, *b.hi) : *b.hi;
  const Int m = c->modulus;
  if (lo) {
    Int first = arith::add(*lo, arith::mod(arith::sub(c->residue, *lo), m));
    if (hi) {
      if (first > *hi) return std::nullopt;
      return Progression{first, m, (*hi - first) / m + 1};
    }
    return Progression{first, m, std::nullopt};
  }
  // Both progressions run towards -infinity.
  Int last = arith::sub(*hi, arith::mod(arith::sub(*hi, c->residue), m));
  return Progression{last, -m, std::nullopt};
}

std::vector<Int> first_two(const Progression& p) {
  if (p.count && *p.count == 1) return {p.base};
  return {p.base, p.at(1)};
}

bool LiftedPiece::contains(Int x) const {
  if (lo && x < *lo) return false;
  if (hi && x > *hi) return false;
  return arith::mod(arith::sub(x, residue_base), step) == 0;
}

Int LiftedPiece::value(Int x) const {
  return arith::add(arith::mul(coeff, arith::sub(x, residue_base) / step), offset);
}

std::optional<Progression> LiftedPiece::domain() const {
  if (lo) {
    Int first = arith::add(*lo, arith::mod(arith::sub(residue_base, *lo), step));
    if (!hi) return Progression{first, step, std::nullopt};
    if (first > *hi) return std::nullopt;
    return Progression{first, step, (*hi - first) / step + 1};
  }
  if (hi) return Progression{arith::sub(*hi, arith::mod(arith::sub(*hi, residue_base), step)), -step, std::nullopt};
  // Unbounded on both sides: start at the residue and walk up; the region
  // helpers only ever need two consecutive members.
  return Progression{arith::mod(residue_base, step), step, std::nullopt};
}

namespace {

const AffinePiece& locate(const PiecewiseAffineMap& m, Int x) {
  const AffinePiece* found = nullptr;
  for (const auto& p : m.pieces) {
    if (!p.domain.contains(x)) continue;
    if (found) throw Error("overlapping pieces at " + std::to_string(x) + " in the map of orbit '" + m.source_orbit + "'");
    found = &p;
  }
  if (!found) throw Error("no piece covers " + std::to_string(x) + " in the map of orbit '" + m.source_orbit + "'");
  return *found;
}

}  // namespace

Element pw_eval(const PiecewiseAffineMap& m, Int x, const OrbitFiniteSet& universe) {
  Int k = universe.characteristic(m.source_orbit);
  if (k >= 1) x = arith::mod(x, k);
  const AffinePiece& p = locate(m, x);
  Int t = p.domain.parameter(x);
  return canonicalize({p.target, arith::add(arith::mul(p.coeff, t), p.offset)}, universe);
}

std::optional<std::string> check_partition(const PiecewiseAffineMap& m, const OrbitFiniteSet& universe) {
  if (!universe.contains(m.source_orbit)) return "unknown source orbit '" + m.source_orbit + "'";
  for (const auto& p : m.pieces) {
    if (!universe.contains(p.target)) return "unknown target orbit '" + p.target + "'";
    if (p.domain.step == 0) return std::string("piece with zero step");
    if (p.domain.count && *p.domain.count < 1) return std::string("piece with empty domain");
  }
  const Int k = universe.characteristic(m.source_orbit);
  if (k >= 1) {
    for (Int x = 0; x < k; ++x) {
      int hits = 0;
      for (const auto& p : m.pieces) hits += p.domain.contains(x) ? 1 : 0;
      if (hits != 1)
        return (hits == 0 ? "gap at " : "overlap at ") + std::to_string(x) + " in orbit '" + m.source_orbit + "'";
    }
    for (const auto& p : m.pieces) {
      Int lowest = p.domain.step > 0 ? p.domain.base : (p.domain.count ? p.domain.at(*p.domain.count - 1) : INT64_MIN);
      Int highest = p.domain.step > 0 ? (p.domain.count ? p.domain.at(*p.domain.count - 1) : INT64_MAX) : p.domain.base;
      if (lowest < 0 || highest >= k) return "piece leaves [0, " + std::to_string(k) + ") in orbit '" + m.source_orbit + "'";
    }
    return std::nullopt;
  }
  PeriodicSet1D covered;
  for (const auto& p : m.pieces) {
    auto s = PeriodicSet1D::from_progression(p.domain);
    auto both = covered.intersect(s);
    if (!both.is_empty())
      return "overlap at " + std::to_string(*both.smallest_magnitude()) + " in orbit '" + m.source_orbit + "'";
    covered = covered.unite(s);
  }
  auto gap = covered.complement();
  if (!gap.is_empty()) return "gap at " + std::to_string(*gap.smallest_magnitude()) + " in orbit '" + m.source_orbit + "'";
  return std::nullopt;
}

std::vector<LiftedPiece> lift(const PiecewiseAffineMap& m, const OrbitFiniteSet& universe) {
  std::vector<LiftedPiece> out;
  const Int k = universe.characteristic(m.source_orbit);
  if (k == 0) {
    for (const auto& p : m.pieces) {
      const auto& d = p.domain;
      LiftedPiece l;
      l.residue_base = d.base;
      l.step = arith::abs(d.step);
      l.target = p.target;
      l.offset = p.offset;
      std::optional<Int> last;
      if (d.count) last = d.at(*d.count - 1);
      if (d.step > 0) {
        l.coeff = p.coeff;
        l.lo = d.base;
        l.hi = last;
      } else {
        l.coeff = arith::sub(0, p.coeff);
        l.hi = d.base;
        l.lo = last;
      }
      out.push_back(std::move(l));
    }
    return out;
  }

  std::vector<Element> image;
  image.reserve(static_cast<std::size_t>(k));
  for (Int x = 0; x < k; ++x) image.push_back(pw_eval(m, x, universe));
  std::vector<bool> done(static_cast<std::size_t>(k), false);
  for (Int s : arith::divisors(k)) {
    for (Int r = 0; r < s; ++r) {
      if (done[static_cast<std::size_t>(r)]) continue;
      bool uniform = true;
      for (Int x = r; x < k && uniform; x += s)
        uniform = !done[static_cast<std::size_t>(x)] && image[static_cast<std::size_t>(x)] == image[static_cast<std::size_t>(r)];
      if (!uniform) continue;
      for (Int x = r; x < k; x += s) done[static_cast<std::size_t>(x)] = true;
      const Element& e = image[static_cast<std::size_t>(r)];
      out.push_back({r, s, std::nullopt, std::nullopt, e.orbit, 0, e.value});
    }
  }
  return out;
}

std::vector<Int> agreement_points(const PiecewiseAffineMap& a, const OrbitFiniteSet& ua, const PiecewiseAffineMap& b,
                                  const OrbitFiniteSet& ub, Int delta) {
  std::vector<Int> out;
  auto la = lift(a, ua), lb = lift(b, ub);
  for (const auto& x : la) {
    for (const auto& y : lb) {
      // members x of piece x with x + delta in piece y
      LiftedPiece shifted = y;
      shifted.residue_base = arith::sub(y.residue_base, delta);
      if (y.lo) shifted.lo = arith::sub(*y.lo, delta);
      if (y.hi) shifted.hi = arith::sub(*y.hi, delta);
      LiftedPiece both = x;
      auto c = arith::crt(x.residue_base, x.step, shifted.residue_base, shifted.step);
      if (!c) continue;
      both.residue_base = c->residue;
      both.step = c->modulus;
      if (shifted.lo) both.lo = both.lo ? std::max(*both.lo, *shifted.lo) : *shifted.lo;
      if (shifted.hi) both.hi = both.hi ? std::min(*both.hi, *shifted.hi) : *shifted.hi;
      if (auto d = both.domain()) {
        auto pts = first_two(*d);
        out.insert(out.end(), pts.begin(), pts.end());
      }
    }
  }
  return out;
}

}  // namespace sla
