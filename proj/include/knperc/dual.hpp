#pragma once

// Exact closed-probabilities of dual edges in the plane spanned by e_1, e_2,
// obtained by exhausting the choice sets of the primal endpoints involved.
// A dual edge is closed exactly when the primal edge it crosses is closed.

#include "knperc/errors.hpp"
#include "knperc/lattice.hpp"
#include "knperc/rational.hpp"

#include <string_view>
#include <vector>

namespace knperc {

/// Dual edge from dual vertex (i, j) = (i + 1/2, j + 1/2) to (i, j) + e_axis, axis in {0, 1}.
struct DualEdge {
  int i = 0;
  int j = 0;
  int axis = 0;

  friend bool operator==(const DualEdge&, const DualEdge&) = default;
};

struct PrimalEdge {
  Vertex u;
  Direction dir;
};

/// The primal edge crossed by `e`, embedded in Z^d (d >= 2) with zero extra coordinates.
PrimalEdge crossed_edge(const DualEdge& e, int d);

enum class DualGeometry {
  Orthogonal,        // two dual edges meeting at a right angle
  ParallelAdjacent,  // opposite sides of one dual plaquette
  Straight,          // collinear and consecutive
  Disjoint,          // far apart
};

std::string_view to_string(DualGeometry g);
DualGeometry parse_geometry(std::string_view text);

/// The two dual edges realizing a geometry.
std::vector<DualEdge> geometry_edges(DualGeometry g);

/// P(all listed dual edges closed). Each endpoint only matters through which of
/// its relevant directions it picks, so each vertex with r relevant directions
/// contributes C(2d - r, k - |T|) / C(2d, k) for the picked subset T.
/// Throws std::invalid_argument for DnG, d < 2 or repeated edges; BudgetExceeded
/// when 4^{#edges} exceeds `budget`.
Rational closed_probability(const ModelSpec& spec, const std::vector<DualEdge>& edges,
                            std::uint64_t budget = default_budget());

/// Same event by brute force over all C(2d,k)^{|V|} joint choice sets. Small cases only.
Rational closed_probability_bruteforce(const ModelSpec& spec, const std::vector<DualEdge>& edges,
                                       std::uint64_t budget = default_budget());

struct DualPairResult {
  DualGeometry geometry = DualGeometry::Orthogonal;
  Rational joint;     // both closed
  Rational marginal;  // one closed
  bool within_product = false;  // joint <= marginal^2
};

DualPairResult joint_dual_closed(const ModelSpec& spec, DualGeometry geometry);

struct DualPathBound {
  int length = 0;
  Rational worst;           // max over self-avoiding dual paths of P(all closed)
  Rational marginal_power;  // P(one closed)^K
  std::vector<DualEdge> worst_path;
  std::uint64_t paths = 0;  // symmetry-reduced paths examined
};

/// Maximum closed-probability over self-avoiding dual paths of length K (1 <= K <= 8),
/// up to the symmetries of the square lattice. Throws std::logic_error if it exceeds marginal^K.
DualPathBound path_closed_bound(const ModelSpec& spec, int K, std::uint64_t budget = default_budget());

/// Dual edges traversed by a dual vertex path (consecutive points at unit distance).
std::vector<DualEdge> edges_of_path(const std::vector<std::pair<int, int>>& points);

}  // namespace knperc
