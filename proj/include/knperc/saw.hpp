#pragma once

// Self-avoiding walks on Z^d, self-avoiding dual circuits around the origin in
// Z^2, and the Peierls sums built from them.

#include "knperc/errors.hpp"
#include "knperc/parallel.hpp"
#include "knperc/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace knperc {

struct SawCounts {
  int d = 2;
  std::vector<std::uint64_t> counts;  // counts[n-1] = c_n(d), n = 1..n_max

  int n_max() const { return static_cast<int>(counts.size()); }
  std::uint64_t c(int n) const;  // c_0 = 1
};

/// Exact c_n(d) for n <= n_max by depth-first enumeration. Walks are reduced by
/// the lattice symmetries (first step +e_1, first turn +e_2) and the subtrees are
/// spread over `workers`; the merge is an ordered sum.
/// Throws BudgetExceeded when 2d(2d-1)^{n_max-1} exceeds `budget`.
SawCounts count_saw(int d, int n_max, std::uint64_t budget = default_budget(),
                    unsigned workers = default_workers());

struct CircuitCount {
  int n = 0;
  std::uint64_t count = 0;  // self-avoiding dual circuits of length n surrounding the origin
  std::uint64_t bound = 0;  // n * c_{n-1}(2)
};

/// Dual vertex (i, j) sits at (i + 1/2, j + 1/2). Circuits are counted once each:
/// rooted at their lowest-leftmost vertex and traversed starting with a +x step.
/// Throws std::invalid_argument for odd n or n < 4; std::logic_error if count > bound.
CircuitCount count_circuits(int n, std::uint64_t budget = default_budget());

struct PeierlsTerm {
  int n = 0;
  std::uint64_t walks = 0;  // c_{n-1}(2)
  Rational value;           // n c_{n-1}(2) p^n
};

struct PeierlsReport {
  Rational closed_prob;
  double growth_upper = 0.0;
  int n_start = 4;
  int n_exact = 4;
  std::vector<PeierlsTerm> terms;
  Rational partial_sum;
  double tail_bound = 0.0;   // sum_{n > max(n_exact, n_start-1)} n g^{n-1} p^n
  double total_bound = 0.0;
  std::optional<int> m_star;  // smallest m >= 1 with bound from n = 4m below 1
};

/// sum_{n > after} n g^{n-1} p^n in closed form. Throws std::domain_error if g p >= 1.
double peierls_tail(double closed_prob, double growth_upper, int after);

/// sum_{n_start <= n <= n_exact} n c_{n-1}(2) p^n + geometric tail with growth g.
/// Needs saw.d == 2 and c_{n_exact - 1} available. Throws std::domain_error if g p >= 1.
PeierlsReport peierls_bound(const Rational& closed_prob, const SawCounts& saw, int n_start, int n_exact,
                            double growth_upper);

}  // namespace knperc
