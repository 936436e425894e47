#pragma once

#include <cstdint>

#include "sla/epad.hpp"

namespace sla::epad::detail {

/// Raised when a search exceeds its step budget; callers turn it into UNKNOWN.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded() : Error("search budget exhausted") {}
};

struct Budget {
  std::uint64_t limit = 20'000'000;
  std::uint64_t used = 0;
  void tick() {
    if (++used > limit) throw BudgetExceeded();
  }
};

enum class Normalized { True, False, Keep };

/// Divides out coefficient gcds, reduces moduli, folds ground constraints.
Normalized normalize(Constraint& c);

std::optional<Valuation> decide_conjunction(const std::vector<Constraint>& constraints, Budget& budget);

}  // namespace sla::epad::detail
