#include <algorithm>
#include <numeric>
#include <sstream>

#include "criteria.hpp"
#include "sla/constructions.hpp"
#include "sla/minimize.hpp"
#include "sla/signatures.hpp"

namespace acceptance {

using namespace sla;

Verdict refinement_divergence() {
  auto trace = partition_refinement(gen_binprefix(), 10);
  std::ostringstream bad;
  for (std::size_t n = 0; n <= 10; ++n) {
    std::vector<Int> want{1, 1, Int{1} << n};
    std::vector<Int> got;
    if (n < trace.steps.size()) got = trace.steps[n].chars;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (got != want) {
      bad << " step " << n << " has characteristics {";
      for (std::size_t i = 0; i < got.size(); ++i) bad << (i ? "," : "") << got[i];
      bad << "}";
    }
  }
  if (trace.stabilized) bad << " stabilized early";
  if (bad.str().empty()) return {true, "11 steps, characteristics {1,1,2^n}"};
  return {false, "mismatch:" + bad.str()};
}

namespace {

// Affine pieces over residues modulo `mod`, with a bounded prefix on some rays.
PiecewiseAffineMap random_map(std::mt19937_64& rng, Int mod, const std::vector<OrbitId>& targets) {
  auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  PiecewiseAffineMap m{"s", {}};
  const Int split = pick(-6, 6);
  for (Int r = 0; r < mod; ++r) {
    Int up = split + arith::mod(r - split, mod);
    for (Progression ray : {Progression{up, mod, std::nullopt}, Progression{up - mod, -mod, std::nullopt}}) {
      const OrbitId& t = targets[static_cast<std::size_t>(pick(0, static_cast<Int>(targets.size()) - 1))];
      if (pick(0, 3) == 0) {
        Int n = pick(1, 3);
        m.pieces.push_back({{ray.base, ray.step, n}, t, pick(-3, 3), pick(-8, 8)});
        m.pieces.push_back({{ray.at(n), ray.step, std::nullopt}, targets[0], pick(-3, 3), pick(-8, 8)});
      } else {
        m.pieces.push_back({ray, t, pick(-3, 3), pick(-8, 8)});
      }
    }
  }
  return m;
}

// Partition of the targets with a characteristic per class; the finite
// orbit `c` (characteristic 12) forces a divisor of 12.
EquivalenceSignature random_signature(std::mt19937_64& rng, const std::vector<OrbitId>& targets) {
  auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  static const std::vector<Int> divisors{1, 2, 3, 4, 6, 12};
  EquivalenceSignature phi;
  phi.sim.classes.push_back({"s"});
  phi.chars.push_back(pick(0, 12));
  std::vector<std::vector<OrbitId>> groups;
  for (const auto& t : targets) {
    auto g = static_cast<std::size_t>(pick(0, static_cast<Int>(groups.size())));
    if (g == groups.size()) groups.push_back({});
    groups[g].push_back(t);
  }
  for (const auto& g : groups) {
    bool finite = std::find(g.begin(), g.end(), "c") != g.end();
    Int ch = finite ? divisors[static_cast<std::size_t>(pick(0, 5))] : pick(0, 12);
    for (std::size_t i = 1; i < g.size(); ++i) phi.diffs[{g[0], g[i]}] = ch == 0 ? pick(-9, 9) : pick(0, ch - 1);
    phi.sim.classes.push_back(g);
    phi.chars.push_back(ch);
  }
  return phi;
}

}  // namespace

Verdict shift_set_soundness() {
  std::mt19937_64 rng(17);
  const OrbitFiniteSet u({{"s", 0}, {"a", 0}, {"b", 0}, {"c", 12}});
  const std::vector<OrbitId> targets{"a", "b", "c"};
  const Int delta_max = 60;
  int instances = 0, mismatches = 0;
  std::string first;
  for (; instances < 240; ++instances) {
    auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
    const Int sf = pick(1, 6), sg = pick(1, 6);
    auto f = random_map(rng, sf, targets), g = random_map(rng, sg, targets);
    auto phi = random_signature(rng, targets);
    if (check_partition(f, u) || check_partition(g, u) || !check_signature(phi, u).empty())
      return {false, "generator produced an invalid instance"};
    // Three periods past every breakpoint, wide enough for every shift.
    const Int window = 3 * std::lcm(sf, sg) + 40 + delta_max;
    auto s = shift_set(f, g, phi, u);
    for (Int delta = -delta_max; delta <= delta_max; ++delta) {
      bool brute = true;
      for (Int i = -window; i <= window && brute; ++i)
        brute = equiv(phi, pw_eval(f, i, u), pw_eval(g, i + delta, u));
      if (s.contains(delta) != brute) {
        if (mismatches++ == 0)
          first = " first at instance " + std::to_string(instances) + " delta " + std::to_string(delta);
      }
    }
  }
  return {mismatches == 0,
          std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches" + first};
}

}  // namespace acceptance
