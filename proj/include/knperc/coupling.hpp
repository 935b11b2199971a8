#pragma once

// Pathwise couplings between choice fields:
//  - k -> k+1 in the same dimension (nested choice sets under a shared seed);
//  - the column kernel deriving a k-choice field on Z^d from a (k+1)-DnG on Z^{d+1}.

#include "knperc/explorer.hpp"
#include "knperc/lattice.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace knperc {

/// Source (k+1)-choice field on Z^{d+1} viewed as columns over Z^d, plus the
/// kernel randomness, both deterministic in the seed.
class ColumnField {
 public:
  ColumnField(int k, int d, std::uint64_t seed);

  int k() const { return k_; }
  int d() const { return d_; }
  ChoiceField& source() { return source_; }

  /// Lift of x' (d coordinates) to level n on the vertical axis.
  Vertex lift(const Vertex& planar, int level) const;
  ChoiceSet at(const Vertex& planar, int level) { return source_.choice(lift(planar, level)); }

  /// Kernel stream for the query of x' started at `level`.
  std::uint64_t kernel_key(const Vertex& planar, int level) const;

 private:
  int k_;
  int d_;
  ChoiceField source_;
  std::uint64_t kernel_seed_;
};

/// k distinct planar directions, each tagged with the level where it was taken.
struct DerivedChoice {
  Vertex planar;
  int start_level = 0;
  std::vector<Direction> directions;
  std::vector<int> levels;
  int depth = 0;        // vertical steps walked
  int vertical = 0;     // +1 / -1 when the column was followed, 0 otherwise

  ChoiceSet as_set() const;
};

inline constexpr int kDefaultLevelBudget = 1 << 20;

/// Kernel at (x', start_level): with >= k planar picks, keep a uniform k of them;
/// otherwise keep the k-1 planar picks, follow a uniformly chosen vertical arrow
/// until a level offers a new planar direction, and take one of those uniformly.
/// Throws std::logic_error if an arrow the construction relies on is missing and
/// BudgetExceeded past `level_budget` vertical steps.
DerivedChoice derive_choice(ColumnField& col, const Vertex& planar, int start_level,
                            int level_budget = kDefaultLevelBudget);

struct CoupledResult {
  ClusterResult source;   // (k+1)-DnG in [-n, n]^{d+1}
  ClusterResult derived;  // derived k-DnG in [-n, n]^d
  std::vector<Vertex> certificate;  // open source path from the origin, filled when derived reaches
  bool certificate_valid = false;
  int max_depth = 0;
};

/// Explores the derived cluster, restarting the kernel at each vertex's discovery
/// level (first derived choice kept), and certifies containment: if the derived
/// cluster reaches the boundary, the lifted path is open in the source and the
/// source cluster reaches the boundary too. Throws std::logic_error otherwise.
CoupledResult explore_coupled(int k, int d, int n, std::uint64_t seed, int level_budget = kDefaultLevelBudget);

/// Checks every edge of a lifted path against the source field and that it ends on the box boundary.
bool validate_certificate(ColumnField& col, const std::vector<Vertex>& path, int n);

struct MonotonePairResult {
  ClusterResult smaller;  // k
  ClusterResult larger;   // k+1, same seed
};

/// Explores the k- and (k+1)-fields of one seed in [-n, n]^d (whole component) and
/// throws std::logic_error unless the k-cluster is contained in the (k+1)-cluster.
/// XnG is rejected: its edge rule is not monotone in the choice sets.
MonotonePairResult monotone_pair(const ModelSpec& spec, int n, std::uint64_t seed);

/// Derived choice at the origin of d-space, level 0, for `samples` independent seeds.
std::vector<ChoiceSet> sample_derived_choices(int k, int d, std::uint64_t samples, std::uint64_t seed,
                                              unsigned workers = default_workers());

}  // namespace knperc
