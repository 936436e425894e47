#include "pair_analysis.hpp"

#include <algorithm>
#include <vector>

namespace sla::detail {

using namespace arith;

std::optional<PairGeometry> pair_geometry(const LiftedPiece& x, const LiftedPiece& y, Int delta0) {
  auto cr = crt(x.residue_base, x.step, sub(y.residue_base, delta0), y.step);
  if (!cr) return std::nullopt;
  PairGeometry g;
  g.L = cr->modulus;
  g.c = cr->residue;
  if (x.lo) g.px = ceil_div(sub(*x.lo, g.c), g.L);
  if (x.hi) g.qx = floor_div(sub(*x.hi, g.c), g.L);
  if (y.lo) g.py = ceil_div(sub(sub(*y.lo, delta0), g.c), g.L);
  if (y.hi) g.qy = floor_div(sub(sub(*y.hi, delta0), g.c), g.L);
  const Int ly = g.L / y.step, lx = g.L / x.step;
  g.B = mul(y.coeff, ly);
  g.A = sub(g.B, mul(x.coeff, lx));
  const Int ty = sub(add(g.c, delta0), y.residue_base) / y.step;
  const Int tx = sub(g.c, x.residue_base) / x.step;
  g.C = sub(add(mul(y.coeff, ty), y.offset), add(mul(x.coeff, tx), x.offset));
  return g;
}

URange u_range(const PairGeometry& g, Int m) {
  URange r;
  r.lo = g.px;
  if (g.py) r.lo = r.lo ? std::max(*r.lo, sub(*g.py, m)) : sub(*g.py, m);
  r.hi = g.qx;
  if (g.qy) r.hi = r.hi ? std::min(*r.hi, sub(*g.qy, m)) : sub(*g.qy, m);
  return r;
}

bool pair_holds(const PairGeometry& g, Int m, bool related, Int ch, Int dd) {
  URange r = u_range(g, m);
  if (r.empty()) return true;
  if (!related) return false;
  // With two or more common points the u-coefficient must vanish too.
  if (!r.single() && !divides(ch, g.A)) return false;
  Int alpha = sub(add(add(mul(g.A, r.anchor()), mul(g.B, m)), g.C), dd);
  return divides(ch, alpha);
}

PeriodicSet1D pair_solutions(const PairGeometry& g, bool related, Int ch, Int dd) {
  // Past these values of m the shape of the u-range no longer changes.
  Int reach = 0;
  auto note = [&](const std::optional<Int>& a, const std::optional<Int>& b) {
    if (a && b) reach = std::max(reach, abs(sub(*a, *b)));
  };
  note(g.py, g.px);
  note(g.qy, g.qx);
  note(g.qy, g.px);
  note(g.py, g.qx);
  reach = add(reach, 3);

  auto holds = [&](Int m) { return pair_holds(g, m, related, ch, dd); };
  if (!related || ch != 0) {
    const Int period = std::max<Int>(ch, 1);
    return PeriodicSet1D::from_predicate(-reach, add(reach, 1), period, period, holds);
  }

  // Equality: far out the condition reads E*m + F = 0 for one of a few
  // anchor formulas, so it holds either everywhere there or at isolated roots.
  std::vector<Int> roots;
  std::vector<std::optional<Int>> anchors{g.px, g.qx, g.py, g.qy, Int{0}};
  for (const auto& p0 : anchors) {
    if (!p0) continue;
    for (Int q : {0, -1}) {
      Int e = add(mul(g.A, q), g.B);
      Int f = sub(add(mul(g.A, *p0), g.C), dd);
      if (e != 0 && f % e == 0) roots.push_back(-(f / e));
    }
  }
  auto generic = [&](Int sign) {
    for (Int j = 1;; ++j) {
      Int m = mul(sign, add(reach, j));
      if (std::find(roots.begin(), roots.end(), m) == roots.end()) return holds(m);
    }
  };
  const bool left = generic(-1), right = generic(1);
  PeriodicSet1D out = PeriodicSet1D::from_predicate(-reach, add(reach, 1), 1, 1, [&](Int m) {
    if (m < -reach) return left;
    if (m > reach) return right;
    return holds(m);
  });
  for (Int m : roots)
    if (abs(m) > reach && holds(m)) out = out.unite(PeriodicSet1D::singleton(m));
  return out;
}

}  // namespace sla::detail
