#pragma once

// Exact enumeration for the second-moment argument on monotone paths:
// the coincidence time of two monotone walks and the moments of the
// number of open monotone paths in the DnG.

#include "knperc/errors.hpp"
#include "knperc/lattice.hpp"
#include "knperc/parallel.hpp"
#include "knperc/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace knperc {

/// Exact law of the coincidence time tau_d up to a cutoff: values[l] = P(tau_d = l).
///
/// tau_d is the first m >= 0 at which two independent walks with uniform steps
/// in {+e_1, ..., +e_d} sit on the same site and then take the same step.
struct TauPmf {
  int d = 0;
  std::vector<Rational> values;

  int cutoff() const { return static_cast<int>(values.size()) - 1; }
  Rational partial_sum() const;
};

/// Walks the difference process S - S' lumped by coordinate permutations.
/// Throws std::invalid_argument for d < 2 or cutoff < 0, BudgetExceeded when the
/// lumped state space times step count exceeds `budget`.
TauPmf enumerate_tau(int d, int cutoff, std::uint64_t budget = default_budget());

/// Mean of the hypergeometric number of monotone directions among k picks:
/// sum_l l C(d,l) C(d,k-l) / C(2d,k).
Rational hypergeometric_mean(int d, int k);

/// Number of monotone (positive-step) paths of length n from the origin, by level-wise counting.
BigInt count_monotone_paths(int d, int n);

/// E[N_n] for the DnG, N_n = number of open monotone paths to level n.
/// Computes (k/2)^n and (#paths) * (k/2d)^n and throws std::logic_error if they differ.
/// Requires k <= d.
Rational expected_open_paths(const ModelSpec& spec, int n);

/// Joint table over (K, L) of ordered monotone path pairs of length n, where K
/// counts shared edges and L counts shared vertices left along different edges.
struct PathPairStats {
  int d = 0;
  int n = 0;
  std::map<std::pair<int, int>, BigInt> counts;

  BigInt total() const;
};

PathPairStats path_pair_stats(int d, int n, std::uint64_t budget = default_budget());

/// E[N_n^2] = sum over pairs p^K q^L p^{2(n-K-L)}, p = k/2d, q = k(k-1)/(2d(2d-1)).
Rational second_moment_exact(const ModelSpec& spec, int n, std::uint64_t budget = default_budget());
Rational second_moment_from_stats(const ModelSpec& spec, const PathPairStats& stats);

struct PathCountMoments {
  double mean = 0.0;
  double mean_std_error = 0.0;
  double mean_square = 0.0;
  double mean_square_std_error = 0.0;
  std::uint64_t trials = 0;
};

/// Samples the DnG on the first orthant up to level n and counts open monotone paths exactly.
PathCountMoments mc_path_count(const ModelSpec& spec, int n, std::uint64_t trials, std::uint64_t seed,
                               unsigned workers = default_workers());

}  // namespace knperc
