#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace knperc {

/// Thrown when an exact enumeration would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t needed, std::uint64_t budget)
      : std::runtime_error(what + " (needs ~" + std::to_string(needed) +
                           " work units, budget " + std::to_string(budget) + ")"),
        needed_(needed),
        budget_(budget) {}

  std::uint64_t needed() const noexcept { return needed_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t needed_;
  std::uint64_t budget_;
};

/// Default enumeration budget in abstract work units. KNPERC_BUDGET overrides it.
std::uint64_t default_budget();

inline void check_budget(const std::string& what, std::uint64_t needed, std::uint64_t budget) {
  if (needed > budget) throw BudgetExceeded(what, needed, budget);
}

}  // namespace knperc
