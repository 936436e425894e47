#pragma once

// Geometry of two lifted pieces X (evaluated at x) and Y (evaluated at
// x + Delta), for shifts in one residue class Delta = delta0 + L*m.
//
// The common points are x = c + L*u with u ranging over an interval whose
// ends move with m. On those points
//   value_Y(x + Delta) - value_X(x) = A*u + B*m + C.
// Everything a shift condition needs is affine in (u, m).

#include <optional>

#include "sla/semilinear.hpp"

namespace sla::detail {

struct PairGeometry {
  Int L = 1, c = 0;
  std::optional<Int> px, qx;  // u bounds from X
  std::optional<Int> py, qy;  // u + m bounds from Y
  Int A = 0, B = 0, C = 0;
};

/// nullopt when no x satisfies both residue conditions for this delta0.
std::optional<PairGeometry> pair_geometry(const LiftedPiece& x, const LiftedPiece& y, Int delta0);

struct URange {
  std::optional<Int> lo, hi;
  bool empty() const { return lo && hi && *lo > *hi; }
  bool single() const { return lo && hi && *lo == *hi; }
  /// A member to evaluate at: lo, else hi, else 0.
  Int anchor() const { return lo ? *lo : hi ? *hi : 0; }
};

URange u_range(const PairGeometry& g, Int m);

/// Whether every common point satisfies the condition for this m. `related`
/// says the two targets are in one class; then the value difference must be
/// congruent to `dd` modulo `ch` (ch = 0 means equality).
bool pair_holds(const PairGeometry& g, Int m, bool related, Int ch, Int dd);

/// The exact set of m for which pair_holds is true.
PeriodicSet1D pair_solutions(const PairGeometry& g, bool related, Int ch, Int dd);

}  // namespace sla::detail
