#pragma once

// Arithmetic progressions, piecewise-affine maps, and exact one-dimensional
// semilinear sets.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sla/atoms.hpp"

namespace sla {

/// {base + step*t : 0 <= t < count}; count = nullopt means unbounded.
struct Progression {
  Int base = 0;
  Int step = 1;                // nonzero, may be negative
  std::optional<Int> count;    // >= 1 when present

  bool infinite() const { return !count.has_value(); }
  bool contains(Int x) const;
  /// Parameter t of x; x must be a member.
  Int parameter(Int x) const { return (x - base) / step; }
  Int at(Int t) const { return arith::add(base, arith::mul(step, t)); }
  bool operator==(const Progression&) const = default;
};

std::optional<Progression> progression_intersect(const Progression& p, const Progression& q);

/// Elements for t = 0 and t = 1 (only one when count = 1).
std::vector<Int> first_two(const Progression& p);
inline std::vector<Int> first_two(const std::optional<Progression>& p) { return p ? first_two(*p) : std::vector<Int>{}; }

/// Two-sided ultimately periodic subset of Z.
///
/// Below `lo` membership depends only on x mod left_period, inside [lo, hi)
/// it is listed explicitly, and from `hi` on it depends on x mod right_period.
/// Periods are at least 1; an empty side is a period with no residues.
class PeriodicSet1D {
 public:
  PeriodicSet1D() = default;  // empty

  static PeriodicSet1D empty() { return {}; }
  static PeriodicSet1D all();
  static PeriodicSet1D singleton(Int x);
  static PeriodicSet1D interval(Int lo, Int hi);  // [lo, hi], may be empty
  /// x ≡ residue (mod modulus) for all x; modulus >= 1.
  static PeriodicSet1D residue_class(Int residue, Int modulus);
  static PeriodicSet1D from_progression(const Progression& p);
  /// Samples `member` on [lo, hi) and on one period at each side; the caller
  /// guarantees the predicate really is periodic outside the window.
  static PeriodicSet1D from_predicate(Int lo, Int hi, Int left_period, Int right_period,
                                      const std::function<bool(Int)>& member);

  bool contains(Int x) const;
  bool is_empty() const;
  bool is_all() const { return complement().is_empty(); }

  PeriodicSet1D unite(const PeriodicSet1D& o) const;
  PeriodicSet1D intersect(const PeriodicSet1D& o) const;
  PeriodicSet1D complement() const;
  PeriodicSet1D minus(const PeriodicSet1D& o) const { return intersect(o.complement()); }
  /// {x + d : x in this}.
  PeriodicSet1D shift(Int d) const;
  /// {offset + factor*m : m in this}; factor >= 1.
  PeriodicSet1D scale(Int offset, Int factor) const;

  std::optional<Int> min_at_least(Int a) const;
  std::optional<Int> max_at_most(Int a) const;
  std::optional<Int> min_positive() const { return min_at_least(1); }
  /// Element closest to zero, preferring the nonnegative one on ties.
  std::optional<Int> smallest_magnitude() const;

  /// Disjoint progressions whose union is this set.
  std::vector<Progression> to_progressions() const;

  Int lo() const { return lo_; }
  Int hi() const { return hi_; }
  Int left_period() const { return left_period_; }
  Int right_period() const { return right_period_; }

  /// Extensional equality.
  bool operator==(const PeriodicSet1D& o) const;

  /// `periodic(left=P@T:{r,...}, window=[a,b):{x,...}, right=P@T:{r,...})`
  std::string to_string() const;
  /// Accepts to_string output plus the shorthands `all`, `none`, and
  /// `M:r1,r2,...` (residue classes modulo M). Throws ParseError.
  static PeriodicSet1D parse(std::string_view text);

 private:
  Int lo_ = 0, hi_ = 0;
  Int left_period_ = 1, right_period_ = 1;
  std::vector<bool> left_{false};   // residues mod left_period_
  std::vector<bool> window_;        // x - lo_
  std::vector<bool> right_{false};  // residues mod right_period_

  void compact();
  static PeriodicSet1D combine(const PeriodicSet1D& a, const PeriodicSet1D& b, bool (*op)(bool, bool));
};

struct AffinePiece {
  Progression domain;
  OrbitId target;
  Int coeff = 0;   // value = coeff*t + offset where x = base + step*t
  Int offset = 0;
  bool operator==(const AffinePiece&) const = default;
};

struct PiecewiseAffineMap {
  OrbitId source_orbit;
  std::vector<AffinePiece> pieces;
  bool operator==(const PiecewiseAffineMap&) const = default;
};

/// Evaluates at x (reduced modulo the source characteristic first). The
/// result is canonicalized in `universe`. Throws Error on a gap or overlap.
Element pw_eval(const PiecewiseAffineMap& m, Int x, const OrbitFiniteSet& universe);

/// Empty when the pieces partition the source domain; otherwise a description
/// of the first defect.
std::optional<std::string> check_partition(const PiecewiseAffineMap& m, const OrbitFiniteSet& universe);

/// A piece re-expressed over Z with a positive step:
/// x ≡ residue_base (mod step), lo <= x <= hi, value coeff*(x - residue_base)/step + offset.
struct LiftedPiece {
  Int residue_base = 0;
  Int step = 1;
  std::optional<Int> lo, hi;
  OrbitId target;
  Int coeff = 0;
  Int offset = 0;

  bool contains(Int x) const;
  Int value(Int x) const;
  /// The members as a progression; nullopt when the bounds exclude them all.
  std::optional<Progression> domain() const;
};

/// Lifts a map to pieces over Z. Finite-characteristic sources become one
/// unbounded piece per residue class, merging classes with equal output.
std::vector<LiftedPiece> lift(const PiecewiseAffineMap& m, const OrbitFiniteSet& universe);

/// Sample points deciding an affine relation between a(x) and b(x + delta).
///
/// On every region where both maps use a single piece, both sides are affine
/// in the region parameter, so a relation of the form "equal modulo c" holds on
/// the whole region once it holds at two consecutive members. The result lists
/// the first two members of every nonempty region.
std::vector<Int> agreement_points(const PiecewiseAffineMap& a, const OrbitFiniteSet& ua, const PiecewiseAffineMap& b,
                                  const OrbitFiniteSet& ub, Int delta);

/// Union of linear sets {base + sum n_i * period_i : n_i >= 0}.
struct LinearSet {
  std::vector<Int> base;
  std::vector<std::vector<Int>> periods;
  bool operator==(const LinearSet&) const = default;
};

struct LinearSetUnion {
  std::size_t dimension = 0;
  std::vector<LinearSet> components;
  bool operator==(const LinearSetUnion&) const = default;
};

/// Throws Error on a dimension mismatch.
bool lsu_member(const LinearSetUnion& r, const std::vector<Int>& v);
inline bool lsu_is_empty(const LinearSetUnion& r) { return r.components.empty(); }
LinearSetUnion lsu_union(const LinearSetUnion& a, const LinearSetUnion& b);

}  // namespace sla
