#include "sla/epad.hpp"
#include "sla/semilinear.hpp"

namespace sla {

namespace {

void check_dimension(const LinearSetUnion& r, std::size_t n) {
  if (n != r.dimension)
    throw Error("dimension mismatch: expected " + std::to_string(r.dimension) + ", got " + std::to_string(n));
  for (const auto& c : r.components) {
    if (c.base.size() != r.dimension) throw Error("linear set base has the wrong dimension");
    for (const auto& p : c.periods)
      if (p.size() != r.dimension) throw Error("linear set period has the wrong dimension");
  }
}

}  // namespace

bool lsu_member(const LinearSetUnion& r, const std::vector<Int>& v) {
  check_dimension(r, v.size());
  using epad::Constraint;
  using epad::LinearTerm;
  for (const auto& c : r.components) {
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < c.periods.size(); ++i)
      cs.push_back({Constraint::Kind::LeZero, -LinearTerm::var("n" + std::to_string(i)), 0});
    for (std::size_t d = 0; d < r.dimension; ++d) {
      LinearTerm t(arith::sub(c.base[d], v[d]));
      for (std::size_t i = 0; i < c.periods.size(); ++i) t += LinearTerm::var("n" + std::to_string(i), c.periods[i][d]);
      cs.push_back({Constraint::Kind::EqZero, t, 0});
    }
    if (epad::solve_conjunction(cs)) return true;
  }
  return false;
}

LinearSetUnion lsu_union(const LinearSetUnion& a, const LinearSetUnion& b) {
  if (a.dimension != b.dimension) throw Error("dimension mismatch in union");
  LinearSetUnion out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  return out;
}

}  // namespace sla
