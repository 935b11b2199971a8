#include "knperc/lattice.hpp"
#include "knperc/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>

using namespace knperc;

namespace {
const Variant kAll[] = {Variant::DnG, Variant::UnG, Variant::BnG, Variant::XnG};
}

TEST_CASE("variant names round-trip") {
  for (Variant v : kAll) CHECK(parse_variant(to_string(v)) == v);
  CHECK(parse_variant("UnG") == Variant::UnG);
  CHECK_THROWS_AS(parse_variant("qng"), std::invalid_argument);
}

TEST_CASE("model validation") {
  CHECK_NOTHROW(ModelSpec{2, 4, Variant::DnG, 0}.validate());
  CHECK_THROWS_AS((ModelSpec{2, 5, Variant::DnG, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelSpec{2, 0, Variant::DnG, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelSpec{0, 1, Variant::DnG, 0}.validate()), std::invalid_argument);
}

TEST_CASE("direction index layout") {
  for (int i = 0; i < 8; ++i) {
    const Direction d = Direction::from_index(i);
    CHECK(d.index() == i);
    CHECK((-d).index() == (i ^ 1));
  }
}

TEST_CASE("choice sets have k elements and are deterministic") {
  ChoiceField f(3, 4, 99);
  ChoiceField g(3, 4, 99);
  ChoiceField h(3, 4, 100);
  int differ = 0;
  for (int x = -5; x <= 5; ++x)
    for (int y = -5; y <= 5; ++y) {
      const Vertex v{x, y, 1};
      CHECK(f.choice(v).size() == 4);
      CHECK(f.choice(v) == g.compute(v));
      differ += !(f.choice(v) == h.choice(v));
    }
  CHECK(differ > 50);
}

TEST_CASE("fields with the same seed are nested in k") {
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k < 2 * d; ++k) {
      ChoiceField small(d, k, 5);
      ChoiceField large(d, k + 1, 5);
      for (int x = -20; x <= 20; ++x) {
        Vertex v(d);
        v[0] = x;
        if (d > 1) v[1] = x * 3 % 7;
        const auto s = small.compute(v).bits();
        const auto l = large.compute(v).bits();
        CHECK((s & l) == s);
      }
    }
}

TEST_CASE("choice sets are uniform over k-subsets") {
  for (auto [d, k] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const auto subs = oracle::subsets(2 * d, k);
    std::map<std::uint32_t, std::size_t> pos;
    for (std::size_t i = 0; i < subs.size(); ++i) pos[subs[i]] = i;
    std::vector<std::uint64_t> counts(subs.size(), 0);
    ChoiceField f(d, k, 2024);
    const int side = 150;
    for (int x = 0; x < side; ++x)
      for (int y = 0; y < side; ++y) {
        Vertex v(d);
        v[0] = x;
        if (d > 1) v[1] = y;
        else v[0] = x * side + y;
        ++counts[pos.at(f.compute(v).bits())];
      }
    std::vector<double> probs(subs.size(), 1.0 / static_cast<double>(subs.size()));
    CHECK(oracle::chi_square_ok(counts, probs, 1e-3));
  }
}

TEST_CASE("counter stream below() stays in range and covers it") {
  CounterStream s(7);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto r = s.below(7);
    REQUIRE(r < 7);
    ++seen[r];
  }
  for (int c : seen) CHECK(c > 800);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("edge probabilities match enumeration of endpoint choices") {
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 2 * d; ++k)
      for (Variant v : kAll) {
        CAPTURE(d);
        CAPTURE(k);
        CAPTURE(to_string(v));
        CHECK(edge_open_probability({d, k, v, 0}) == oracle::edge_open(d, k, v));
      }
}

TEST_CASE("pair probabilities match local enumeration") {
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 2 * d; ++k)
      for (Variant v : kAll) {
        CAPTURE(d);
        CAPTURE(k);
        CAPTURE(to_string(v));
        const ModelSpec spec{d, k, v, 0};
        const auto dis = pair_probability(spec, PairRelation::Disjoint);
        CHECK(dis.joint == oracle::disjoint_joint(d, k, v));
        if (v == Variant::DnG) {
          const auto same = pair_probability(spec, PairRelation::SameSource);
          CHECK(same.joint == oracle::same_source_joint(d, k, 1));
          if (d > 1) CHECK(same.joint == oracle::same_source_joint(d, k, 2));
          CHECK_THROWS_AS(pair_probability(spec, PairRelation::Adjacent), std::invalid_argument);
        } else {
          const auto adj = pair_probability(spec, PairRelation::Adjacent);
          CHECK(adj.joint == oracle::adjacent_joint(d, k, v, 1));
          if (d > 1) CHECK(adj.joint == oracle::adjacent_joint(d, k, v, 2));
          if (adj.marginal != 0) CHECK(adj.conditional * adj.marginal == adj.joint);
          CHECK_THROWS_AS(pair_probability(spec, PairRelation::SameSource), std::invalid_argument);
        }
      }
}

TEST_CASE("XnG adjacent joint has the closed form (2d-k)(k(4k-1)(2d-k)-k^2)/(8d^3(2d-1))") {
  for (int d = 1; d <= 6; ++d)
    for (int k = 1; k <= 2 * d; ++k) {
      const BigInt n = 2 * d - k;
      const Rational closed(n * (BigInt(k) * (4 * k - 1) * n - BigInt(k) * k),
                            BigInt(8) * d * d * d * (2 * d - 1));
      CHECK(pair_probability({d, k, Variant::XnG, 0}, PairRelation::Adjacent).joint == closed);
    }
}

TEST_CASE("XnG laws are invariant under k -> 2d-k") {
  for (int d = 1; d <= 5; ++d)
    for (int k = 1; k < 2 * d; ++k) {
      const ModelSpec a{d, k, Variant::XnG, 0};
      const ModelSpec b{d, 2 * d - k, Variant::XnG, 0};
      CHECK(edge_open_probability(a) == edge_open_probability(b));
      CHECK(pair_probability(a, PairRelation::Adjacent).joint == pair_probability(b, PairRelation::Adjacent).joint);
      CHECK(degree_pmf(a) == degree_pmf(b));
    }
}

TEST_CASE("degree laws match enumeration of the star around a vertex") {
  // The vertex and its 2d neighbors, all choices enumerated (d <= 2).
  for (int d = 1; d <= 2; ++d)
    for (int k = 1; k <= 2 * d; ++k)
      for (Variant v : kAll) {
        const auto s = oracle::subsets(2 * d, k);
        const int nn = 2 * d;
        std::vector<std::uint64_t> hist(nn + 1, 0);
        std::vector<std::size_t> pick(nn + 1, 0);
        std::uint64_t total = 0;
        while (true) {
          ++total;
          int deg = 0;
          for (int dir = 0; dir < nn; ++dir) {
            const bool fwd = (s[pick[0]] >> dir) & 1u;
            const bool bwd = (s[pick[1 + dir]] >> (dir ^ 1)) & 1u;
            deg += oracle::open_rule(v, fwd, bwd);
          }
          ++hist[deg];
          std::size_t i = 0;
          while (i <= static_cast<std::size_t>(nn) && ++pick[i] == s.size()) pick[i++] = 0;
          if (i > static_cast<std::size_t>(nn)) break;
        }
        const auto pmf = degree_pmf({d, k, v, 0});
        for (int j = 0; j <= nn; ++j) CHECK(pmf[j] == Rational(BigInt(hist[j]), BigInt(total)));
      }
}

TEST_CASE("degree laws sum to one and have the edge mean") {
  for (int d = 1; d <= 4; ++d)
    for (int k = 1; k <= 2 * d; ++k)
      for (Variant v : kAll) {
        const ModelSpec spec{d, k, v, 0};
        const auto pmf = degree_pmf(spec);
        Rational sum = 0, mean = 0;
        for (std::size_t j = 0; j < pmf.size(); ++j) {
          CHECK(pmf[j] >= 0);
          sum += pmf[j];
          mean += pmf[j] * static_cast<int>(j);
        }
        CHECK(sum == 1);
        CHECK(mean == 2 * d * edge_open_probability(spec));
      }
}

TEST_CASE("sampled BnG degrees follow Bin(k, k/2d)") {
  const ModelSpec spec{3, 3, Variant::BnG, 0};
  ChoiceField f(spec, 77);
  const auto pmf = degree_pmf(spec);
  std::vector<std::uint64_t> counts(pmf.size(), 0);
  for (int x = 0; x < 60; ++x)
    for (int y = 0; y < 60; ++y)
      for (int z = 0; z < 10; ++z) {
        const Vertex v{x * 3, y * 3, z * 3};
        int deg = 0;
        for (int di = 0; di < 6; ++di) deg += edge_open(spec.variant, f, v, Direction::from_index(di));
        ++counts[deg];
      }
  std::vector<std::uint64_t> obs;
  std::vector<double> probs;
  for (std::size_t j = 0; j < pmf.size(); ++j)
    if (pmf[j] > 0) {
      obs.push_back(counts[j]);
      probs.push_back(to_double(pmf[j]));
    } else {
      CHECK(counts[j] == 0);
    }
  CHECK(oracle::chi_square_ok(obs, probs, 1e-3));
}

TEST_CASE("edge_open uses both endpoints for undirected variants") {
  ChoiceField f(2, 2, 3);
  const Vertex u{0, 0};
  for (int di = 0; di < 4; ++di) {
    const Direction dir = Direction::from_index(di);
    const bool fwd = f.chooses(u, dir);
    const bool bwd = f.chooses(u.step(dir), -dir);
    CHECK(edge_open(Variant::DnG, f, u, dir) == fwd);
    CHECK(edge_open(Variant::UnG, f, u, dir) == (fwd || bwd));
    CHECK(edge_open(Variant::BnG, f, u, dir) == (fwd && bwd));
    CHECK(edge_open(Variant::XnG, f, u, dir) == (fwd != bwd));
  }
}
