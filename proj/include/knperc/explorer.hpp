#pragma once

// Cluster exploration of the origin and the Monte Carlo estimators built on it.

#include "knperc/lattice.hpp"
#include "knperc/parallel.hpp"

#include <cstdint>
#include <vector>

namespace knperc {

/// Centered box [-n, n]^d.
struct BoxRegion {
  int d = 2;
  int n = 1;

  bool contains(const Vertex& v) const { return v.max_norm() <= n; }
  bool on_boundary(const Vertex& v) const { return v.max_norm() == n; }
  std::uint64_t volume() const;
};

enum class ExploreMode { Out, In, Undirected };

enum class StopRule {
  AtBoundary,  // stop at the first boundary contact (boundary-reach estimand)
  Exhaust,     // explore the whole component inside the box (proportion estimand)
};

struct ExploreOptions {
  StopRule stop = StopRule::AtBoundary;
  bool keep_sample = false;
};

struct ClusterResult {
  std::uint64_t visited_count = 0;
  bool reached_boundary = false;
  bool frontier_exhausted = false;
  std::vector<Vertex> visited_sample;  // BFS order, filled when keep_sample
};

/// BFS from the origin along open edges inside `box`. Neighbors are scanned in
/// direction-index order, so the traversal is a pure function of the field.
/// Throws std::invalid_argument on a mode/variant mismatch; In is torus-only.
ClusterResult explore(const ModelSpec& spec, std::uint64_t trial_seed, const BoxRegion& box,
                      ExploreMode mode, const ExploreOptions& options = {});
ClusterResult explore(ChoiceField& field, Variant variant, const BoxRegion& box, ExploreMode mode,
                      const ExploreOptions& options = {});

struct EstimateWithCI {
  double point = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
};

/// Mode used by the estimators for a variant: Out for DnG, Undirected otherwise.
ExploreMode default_mode(Variant variant);

/// Fraction of trials whose origin cluster touches the boundary of [-n,n]^d.
/// Trial t runs on seed derive_seed(master_seed, t).
EstimateWithCI estimate_boundary_reach(const ModelSpec& spec, int n, std::uint64_t trials,
                                       std::uint64_t master_seed, unsigned workers = default_workers());

/// Mean of |cluster inside box| / (2n+1)^d.
EstimateWithCI estimate_proportion(const ModelSpec& spec, int n, std::uint64_t trials,
                                   std::uint64_t master_seed, unsigned workers = default_workers());

struct GenerationTrace {
  std::vector<std::int64_t> max_l1;  // max ||x||_1 over G_0, G_1, ...
  std::vector<std::uint64_t> sizes;  // |G_0|, |G_1|, ...

  bool strictly_increasing() const;
};

/// Generation process G_0 = {o}, G_{n+1} = chosen neighbors of G_n not seen before.
/// Requires DnG with k >= d+1.
GenerationTrace growth_trace(const ModelSpec& spec, int generations, std::uint64_t seed);

/// Size of the out- or in-component of the origin in the DnG on the torus (Z/LZ)^d.
std::uint64_t torus_component_size(ChoiceField& field, int side, ExploreMode mode);

struct MassTransportResult {
  EstimateWithCI out;
  EstimateWithCI in;
  int side = 0;
};

/// Paired estimates of E|out-component| and E|in-component| on the torus, from
/// independent seed streams. Throws for L < 3 or non-DnG specs.
MassTransportResult mass_transport_check(const ModelSpec& spec, int side, std::uint64_t trials,
                                         std::uint64_t master_seed, unsigned workers = default_workers());

/// Sample mean and standard error of the mean.
EstimateWithCI summarize(const std::vector<double>& samples, std::uint64_t master_seed);

}  // namespace knperc
