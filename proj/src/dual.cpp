#include "knperc/dual.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace knperc {

PrimalEdge crossed_edge(const DualEdge& e, int d) {
  if (d < 2 || d > kMaxDim) throw std::invalid_argument("dual edges need 2 <= d <= 8");
  if (e.axis != 0 && e.axis != 1) throw std::invalid_argument("dual edge axis must be 0 or 1");
  Vertex u(d);
  if (e.axis == 0) {
    // Horizontal dual edge at height j + 1/2 crosses the vertical primal edge x = i + 1.
    u[0] = e.i + 1;
    u[1] = e.j;
    return {u, Direction{1, 1}};
  }
  u[0] = e.i;
  u[1] = e.j + 1;
  return {u, Direction{0, 1}};
}

std::string_view to_string(DualGeometry g) {
  switch (g) {
    case DualGeometry::Orthogonal: return "orthogonal";
    case DualGeometry::ParallelAdjacent: return "parallel-adjacent";
    case DualGeometry::Straight: return "straight";
    case DualGeometry::Disjoint: return "disjoint";
  }
  return "?";
}

DualGeometry parse_geometry(std::string_view text) {
  for (auto g : {DualGeometry::Orthogonal, DualGeometry::ParallelAdjacent, DualGeometry::Straight,
                 DualGeometry::Disjoint})
    if (text == to_string(g)) return g;
  throw std::invalid_argument("unsupported dual geometry: " + std::string(text));
}

std::vector<DualEdge> geometry_edges(DualGeometry g) {
  switch (g) {
    case DualGeometry::Orthogonal: return {{0, 0, 0}, {0, 0, 1}};
    case DualGeometry::ParallelAdjacent: return {{0, 0, 0}, {0, 1, 0}};
    case DualGeometry::Straight: return {{0, 0, 0}, {1, 0, 0}};
    case DualGeometry::Disjoint: return {{0, 0, 0}, {5, 5, 0}};
  }
  throw std::invalid_argument("unsupported dual geometry");
}

namespace {

struct LocalProblem {
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> relevant;  // direction indices per vertex
  // edge -> (vertex a, slot in a, vertex b, slot in b); a picks dir, b picks -dir
  struct Link {
    int a, sa, b, sb;
  };
  std::vector<Link> links;
};

LocalProblem build(const ModelSpec& spec, const std::vector<DualEdge>& edges) {
  spec.validate();
  if (spec.variant == Variant::DnG) throw std::invalid_argument("dual edges are defined for undirected variants");
  if (spec.d < 2) throw std::invalid_argument("dual lattice needs d >= 2");
  for (std::size_t x = 0; x < edges.size(); ++x)
    for (std::size_t y = x + 1; y < edges.size(); ++y)
      if (edges[x] == edges[y]) throw std::invalid_argument("repeated dual edge");

  LocalProblem p;
  auto slot = [&](const Vertex& v, Direction dir) {
    auto it = std::find(p.vertices.begin(), p.vertices.end(), v);
    int vi = static_cast<int>(it - p.vertices.begin());
    if (it == p.vertices.end()) {
      p.vertices.push_back(v);
      p.relevant.emplace_back();
    }
    auto& rel = p.relevant[vi];
    auto jt = std::find(rel.begin(), rel.end(), dir.index());
    int si = static_cast<int>(jt - rel.begin());
    if (jt == rel.end()) rel.push_back(dir.index());
    return std::pair{vi, si};
  };
  for (const DualEdge& e : edges) {
    const PrimalEdge pe = crossed_edge(e, spec.d);
    const auto [a, sa] = slot(pe.u, pe.dir);
    const auto [b, sb] = slot(pe.u.step(pe.dir), -pe.dir);
    p.links.push_back({a, sa, b, sb});
  }
  return p;
}

}  // namespace

Rational closed_probability(const ModelSpec& spec, const std::vector<DualEdge>& edges, std::uint64_t budget) {
  const LocalProblem p = build(spec, edges);
  const int nd = 2 * spec.d;
  const int nv = static_cast<int>(p.vertices.size());
  check_budget("closed_probability", edges.size() >= 32 ? UINT64_MAX : (1ULL << (2 * edges.size())), budget);

  // Links are checked at the later of their two endpoints.
  std::vector<std::vector<int>> due(nv);
  for (int l = 0; l < static_cast<int>(p.links.size()); ++l)
    due[std::max(p.links[l].a, p.links[l].b)].push_back(l);

  std::vector<std::uint32_t> picked(nv, 0);
  BigInt numerator = 0;
  auto recurse = [&](auto&& self, int v, const BigInt& weight) -> void {
    if (v == nv) {
      numerator += weight;
      return;
    }
    const int r = static_cast<int>(p.relevant[v].size());
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
      const int t = std::popcount(mask);
      if (t > spec.k || spec.k - t > nd - r) continue;
      picked[v] = mask;
      bool ok = true;
      for (int l : due[v]) {
        const auto& link = p.links[l];
        const bool fwd = (picked[link.a] >> link.sa) & 1u;
        const bool bwd = (picked[link.b] >> link.sb) & 1u;
        if (edge_rule(spec.variant, fwd, bwd)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, v + 1, weight * binomial(nd - r, spec.k - t));
    }
  };
  recurse(recurse, 0, BigInt(1));
  BigInt denominator = 1;
  for (int v = 0; v < nv; ++v) denominator *= binomial(nd, spec.k);
  return Rational(numerator, denominator);
}

Rational closed_probability_bruteforce(const ModelSpec& spec, const std::vector<DualEdge>& edges,
                                       std::uint64_t budget) {
  const LocalProblem p = build(spec, edges);
  const int nd = 2 * spec.d;
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t m = 0; m < (1u << nd); ++m)
    if (std::popcount(m) == spec.k) subsets.push_back(m);
  const int nv = static_cast<int>(p.vertices.size());
  const long double cases = std::pow(static_cast<long double>(subsets.size()), nv);
  check_budget("closed_probability_bruteforce", cases > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(cases),
               budget);

  std::vector<std::size_t> idx(nv, 0);
  std::uint64_t good = 0;
  std::uint64_t total = 0;
  while (true) {
    ++total;
    bool all_closed = true;
    for (const auto& link : p.links) {
      const bool fwd = (subsets[idx[link.a]] >> p.relevant[link.a][link.sa]) & 1u;
      const bool bwd = (subsets[idx[link.b]] >> p.relevant[link.b][link.sb]) & 1u;
      if (edge_rule(spec.variant, fwd, bwd)) {
        all_closed = false;
        break;
      }
    }
    if (all_closed) ++good;
    int v = 0;
    while (v < nv && ++idx[v] == subsets.size()) idx[v++] = 0;
    if (v == nv) break;
  }
  return Rational(BigInt(good), BigInt(total));
}

DualPairResult joint_dual_closed(const ModelSpec& spec, DualGeometry geometry) {
  const auto edges = geometry_edges(geometry);
  DualPairResult r;
  r.geometry = geometry;
  r.joint = closed_probability(spec, edges);
  r.marginal = closed_probability(spec, {edges.front()});
  r.within_product = r.joint <= r.marginal * r.marginal;
  return r;
}

std::vector<DualEdge> edges_of_path(const std::vector<std::pair<int, int>>& points) {
  std::vector<DualEdge> out;
  for (std::size_t t = 0; t + 1 < points.size(); ++t) {
    const auto [i0, j0] = points[t];
    const auto [i1, j1] = points[t + 1];
    if (std::abs(i1 - i0) + std::abs(j1 - j0) != 1) throw std::invalid_argument("dual path has a non-unit step");
    if (j0 == j1) out.push_back({std::min(i0, i1), j0, 0});
    else out.push_back({i0, std::min(j0, j1), 1});
  }
  return out;
}

DualPathBound path_closed_bound(const ModelSpec& spec, int K, std::uint64_t budget) {
  if (K < 1 || K > 8) throw std::invalid_argument("path_closed_bound supports 1 <= K <= 8");
  DualPathBound out;
  out.length = K;
  const Rational marginal = closed_probability(spec, {DualEdge{0, 0, 0}}, budget);
  out.marginal_power = pow(marginal, K);

  // First step +x; the first turn (if any) goes +y.
  std::vector<std::pair<int, int>> path{{0, 0}, {1, 0}};
  std::set<std::pair<int, int>> seen(path.begin(), path.end());
  bool have = false;
  auto recurse = [&](auto&& self, bool turned) -> void {
    if (static_cast<int>(path.size()) == K + 1) {
      ++out.paths;
      const auto edges = edges_of_path(path);
      const Rational pr = closed_probability(spec, edges, budget);
      if (!have || pr > out.worst) {
        out.worst = pr;
        out.worst_path = edges;
        have = true;
      }
      return;
    }
    static constexpr int kDi[4] = {1, -1, 0, 0};
    static constexpr int kDj[4] = {0, 0, 1, -1};
    const auto [i, j] = path.back();
    for (int s = 0; s < 4; ++s) {
      if (!turned && s != 0 && s != 2) continue;
      const std::pair<int, int> next{i + kDi[s], j + kDj[s]};
      if (seen.count(next)) continue;
      path.push_back(next);
      seen.insert(next);
      self(self, turned || s == 2);
      seen.erase(next);
      path.pop_back();
    }
  };
  recurse(recurse, false);
  if (out.worst > out.marginal_power) throw std::logic_error("dual path closed-probability exceeds marginal^K");
  return out;
}

}  // namespace knperc
