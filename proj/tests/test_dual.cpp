#include "knperc/dual.hpp"

#include <doctest.h>

using namespace knperc;

namespace {
Rational R(long long a, long long b) { return make_rational(a, b); }
const DualGeometry kGeometries[] = {DualGeometry::Orthogonal, DualGeometry::ParallelAdjacent,
                                    DualGeometry::Straight, DualGeometry::Disjoint};
}  // namespace

TEST_CASE("dual edges cross the expected primal edges") {
  const auto a = crossed_edge({0, 0, 0}, 2);
  CHECK(a.u == Vertex{1, 0});
  CHECK(a.dir == Direction{1, 1});
  const auto b = crossed_edge({0, 0, 1}, 3);
  CHECK(b.u == Vertex{0, 1, 0});
  CHECK(b.dir == Direction{0, 1});
}

TEST_CASE("geometry names round-trip") {
  for (DualGeometry g : kGeometries) CHECK(parse_geometry(to_string(g)) == g);
  CHECK_THROWS_AS(parse_geometry("diagonal"), std::invalid_argument);
}

TEST_CASE("orthogonal dual pair: 1/24 in the plane, 1/20 in three dimensions") {
  const auto two = joint_dual_closed({2, 2, Variant::UnG, 0}, DualGeometry::Orthogonal);
  CHECK(two.joint == R(1, 24));
  CHECK(two.marginal == R(1, 4));
  CHECK(two.within_product);
  const auto three = joint_dual_closed({3, 3, Variant::UnG, 0}, DualGeometry::Orthogonal);
  CHECK(three.joint == Rational(binomial(5, 3) * binomial(5, 3) * binomial(4, 3),
                                binomial(6, 3) * binomial(6, 3) * binomial(6, 3)));
  CHECK(three.joint == R(1, 20));
  CHECK(three.marginal == R(1, 4));
}

TEST_CASE("lumped enumeration matches brute force over all joint choice sets") {
  for (Variant v : {Variant::UnG, Variant::BnG, Variant::XnG})
    for (auto [d, k] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}})
      for (DualGeometry g : kGeometries) {
        if (g == DualGeometry::Disjoint && d == 3) continue;  // 4 vertices of C(6,k) each
        const ModelSpec spec{d, k, v, 0};
        const auto edges = geometry_edges(g);
        CAPTURE(to_string(v));
        CAPTURE(d);
        CAPTURE(k);
        CAPTURE(to_string(g));
        CHECK(closed_probability(spec, edges) == closed_probability_bruteforce(spec, edges));
      }
  const std::vector<DualEdge> path{{0, 0, 0}, {1, 0, 1}, {1, 1, 0}};
  CHECK(closed_probability({2, 2, Variant::UnG, 0}, path) ==
        closed_probability_bruteforce({2, 2, Variant::UnG, 0}, path));
}

TEST_CASE("UnG and BnG dual pairs are never positively correlated") {
  for (Variant v : {Variant::UnG, Variant::BnG})
    for (int d = 2; d <= 5; ++d)
      for (int k = 1; k <= 2 * d; ++k)
        for (DualGeometry g : kGeometries) {
          const auto r = joint_dual_closed({d, k, v, 0}, g);
          CHECK(r.joint <= r.marginal * r.marginal);
          CHECK(r.within_product);
          if (g == DualGeometry::Straight || g == DualGeometry::Disjoint) CHECK(r.joint == r.marginal * r.marginal);
        }
}

TEST_CASE("BnG dual marginal is 1 - (k/2d)^2") {
  for (int d = 2; d <= 5; ++d)
    for (int k = 1; k <= 2 * d; ++k) {
      const Rational p = R(k, 2 * d);
      CHECK(joint_dual_closed({d, k, Variant::BnG, 0}, DualGeometry::Disjoint).marginal == 1 - p * p);
    }
}

TEST_CASE("closed-probability errors") {
  CHECK_THROWS_AS(closed_probability({2, 2, Variant::DnG, 0}, geometry_edges(DualGeometry::Orthogonal)),
                  std::invalid_argument);
  CHECK_THROWS_AS(closed_probability({2, 2, Variant::UnG, 0}, {{0, 0, 0}, {0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(closed_probability({1, 1, Variant::UnG, 0}, {{0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(closed_probability({2, 2, Variant::UnG, 0}, geometry_edges(DualGeometry::Orthogonal), 2),
                  BudgetExceeded);
}

TEST_CASE("dual paths of length 2 and 3") {
  const ModelSpec spec{2, 2, Variant::UnG, 0};
  CHECK(closed_probability(spec, edges_of_path({{0, 0}, {1, 0}, {2, 0}})) == R(1, 16));
  CHECK(closed_probability(spec, edges_of_path({{0, 0}, {1, 0}, {1, 1}})) == R(1, 24));
  const auto k2 = path_closed_bound(spec, 2);
  CHECK(k2.worst == R(1, 16));
  CHECK(k2.marginal_power == R(1, 16));
  const auto k3 = path_closed_bound(spec, 3);
  CHECK(k3.worst <= R(1, 64));
  CHECK(k3.worst_path.size() == 3);
  CHECK(k3.paths > 0);
  CHECK_THROWS_AS(path_closed_bound(spec, 0), std::invalid_argument);
  CHECK_THROWS_AS(path_closed_bound(spec, 9), std::invalid_argument);
}

TEST_CASE("dual paths up to length 6 stay below the product of marginals") {
  for (Variant v : {Variant::UnG, Variant::BnG})
    for (auto [d, k] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
      for (int K = 1; K <= 6; ++K) {
        const auto r = path_closed_bound({d, k, v, 0}, K);
        CHECK(r.worst <= r.marginal_power);
      }
}

TEST_CASE("edges_of_path rejects non-adjacent points") {
  CHECK_THROWS_AS(edges_of_path({{0, 0}, {2, 0}}), std::invalid_argument);
  const auto e = edges_of_path({{0, 0}, {-1, 0}, {-1, -1}});
  REQUIRE(e.size() == 2);
  CHECK(e[0] == DualEdge{-1, 0, 0});
  CHECK(e[1] == DualEdge{-1, -1, 1});
}
