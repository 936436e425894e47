#pragma once

// Small machines and helpers shared by unit and acceptance tests.

#include <optional>
#include <random>
#include <vector>

#include "sla/automata.hpp"
#include "sla/constructions.hpp"

namespace fixtures {

struct MachineCase {
  const char* name;
  const char* program;
  sla::CmConfig x, y;
};

inline const std::vector<MachineCase>& machines() {
  static const std::vector<MachineCase> cases{
      {"two increments", "inc 1 1\ninc 1 2\nhalt\n", {0, 0, 0}, {2, 2, 0}},
      {"transfer c1 to c2", "dec 1 1 2\ninc 2 0\nhalt\n", {0, 3, 0}, {2, 0, 3}},
      {"cycle", "inc 1 1\ndec 1 0 0\n", {0, 0, 0}, {0, 0, 0}},
      {"halt at once", "halt\n", {0, 2, 1}, {0, 2, 1}},
  };
  return cases;
}

/// Least m in [1, limit] with succ^m(x) = y.
inline std::optional<int> first_hit(const sla::CounterMachine& m, sla::CmConfig x, const sla::CmConfig& y, int limit) {
  for (int k = 1; k <= limit; ++k) {
    x = sla::cm_step(m, x);
    if (x == y) return k;
  }
  return std::nullopt;
}

/// Letters with values in [lo, hi] for every letter orbit.
inline std::vector<sla::Letter> letter_sample(const sla::EquivariantDFA& d, sla::Int lo, sla::Int hi) {
  std::vector<sla::Letter> out;
  for (const auto& o : d.alphabet.orbits())
    for (sla::Int v = lo; v <= hi; ++v) {
      sla::Int c = o.characteristic;
      if (c >= 1 && (v < 0 || v >= c)) continue;
      out.push_back({o.id, v});
    }
  return out;
}

/// Calls f on every word of length <= max_len over the sample.
template <typename F>
void for_each_word(const std::vector<sla::Letter>& sample, std::size_t max_len, F&& f) {
  sla::Word w;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    f(w);
    if (depth == max_len) return;
    for (const auto& a : sample) {
      w.push_back(a);
      self(self, depth + 1);
      w.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace fixtures
