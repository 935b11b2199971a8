#include "knperc/walks.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace knperc;

namespace {
Rational R(long long a, long long b) { return make_rational(a, b); }
}

TEST_CASE("tau law matches trajectory enumeration for small d") {
  for (auto [d, cutoff] : {std::pair{2, 7}, std::pair{3, 5}, std::pair{4, 3}}) {
    const auto ref = oracle::tau(d, cutoff);
    const auto pmf = enumerate_tau(d, cutoff);
    REQUIRE(pmf.cutoff() == cutoff);
    for (int l = 0; l <= cutoff; ++l) {
      CAPTURE(d);
      CAPTURE(l);
      CHECK(pmf.values[l] == ref[l]);
    }
  }
}

TEST_CASE("tau: first values") {
  for (int d = 2; d <= 6; ++d) {
    const auto pmf = enumerate_tau(d, 2);
    const Rational dd(d);
    CHECK(pmf.values[0] == 1 / dd);
    CHECK(pmf.values[1] == 0);
    CHECK(pmf.values[2] == 1 / (dd * dd * dd) - 1 / (dd * dd * dd * dd));
  }
}

TEST_CASE("tau: exact values for d = 4, 5, 6") {
  const auto t4 = enumerate_tau(4, 5);
  CHECK(t4.values[3] == R(3, 512));
  CHECK(t4.values[4] == R(279, 65536));
  CHECK(t4.values[5] == R(831, 262144));
  const auto t5 = enumerate_tau(5, 5);
  CHECK(t5.values[3] == R(44, 15625));
  CHECK(t5.values[4] == R(712, 390625));
  CHECK(t5.values[5] == R(12136, 9765625));
  const auto t6 = enumerate_tau(6, 3);
  CHECK(t6.values[3] == R(35, 23328));
}

TEST_CASE("tau: probabilities are bounded by l!/d^l beyond l = 2") {
  for (int d = 4; d <= 6; ++d) {
    const auto pmf = enumerate_tau(d, d);
    Rational f = 2;
    for (int l = 3; l <= d; ++l) {
      f *= l;
      CHECK(pmf.values[l] <= f / pow(Rational(d), l));
    }
    CHECK(pmf.partial_sum() < 1);
  }
}

TEST_CASE("tau: argument and budget errors") {
  CHECK_THROWS_AS(enumerate_tau(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_tau(3, -1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_tau(6, 20, 100), BudgetExceeded);
}

TEST_CASE("hypergeometric mean is k/2") {
  for (int d = 1; d <= 8; ++d)
    for (int k = 0; k <= d; ++k) CHECK(hypergeometric_mean(d, k) == R(k, 2));
  // beyond k = d the mean is still k/2 by symmetry of the two halves
  CHECK(hypergeometric_mean(3, 5) == R(5, 2));
}

TEST_CASE("monotone path counts and the first moment") {
  for (int d = 1; d <= 5; ++d)
    for (int n = 0; n <= 6; ++n) CHECK(Rational(count_monotone_paths(d, n)) == pow(Rational(d), n));
  for (int d = 1; d <= 4; ++d)
    for (int k = 1; k <= d; ++k)
      for (int n = 0; n <= 6; ++n) CHECK(expected_open_paths({d, k, Variant::DnG, 0}, n) == pow(R(k, 2), n));
  CHECK_THROWS_AS(expected_open_paths({2, 3, Variant::DnG, 0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(expected_open_paths({2, 2, Variant::UnG, 0}, 3), std::invalid_argument);
}

TEST_CASE("path pair table matches all pairs of paths") {
  for (auto [d, n] : {std::pair{2, 6}, std::pair{3, 4}, std::pair{4, 3}}) {
    const auto stats = path_pair_stats(d, n);
    const auto ref = oracle::path_pairs(d, n);
    CHECK(stats.counts.size() == ref.size());
    for (const auto& [kl, c] : ref) CHECK(stats.counts.at(kl) == c);
    CHECK(Rational(stats.total()) == pow(Rational(d), 2 * n));
  }
}

TEST_CASE("second moment matches configuration enumeration") {
  for (auto [d, k, n] : {std::tuple{2, 1, 2}, std::tuple{2, 2, 2}, std::tuple{2, 2, 3}, std::tuple{2, 3, 2},
                         std::tuple{1, 1, 4}, std::tuple{3, 2, 2}}) {
    CAPTURE(d);
    CAPTURE(k);
    CAPTURE(n);
    CHECK(second_moment_exact({d, k, Variant::DnG, 0}, n) == oracle::second_moment(d, k, n));
  }
}

TEST_CASE("second moment dominates the squared first moment") {
  for (int n = 1; n <= 6; ++n) {
    const ModelSpec spec{3, 2, Variant::DnG, 0};
    const Rational m1 = expected_open_paths(spec, n);
    CHECK(second_moment_exact(spec, n) >= m1 * m1);
  }
}

TEST_CASE("Monte Carlo path count agrees with the exact moments") {
  const ModelSpec spec{2, 2, Variant::DnG, 0};
  const auto mc = mc_path_count(spec, 3, 20000, 5, 2);
  const double m1 = to_double(expected_open_paths(spec, 3));
  const double m2 = to_double(second_moment_exact(spec, 3));
  CHECK(std::abs(mc.mean - m1) <= 4 * mc.mean_std_error);
  CHECK(std::abs(mc.mean_square - m2) <= 4 * mc.mean_square_std_error);
  const auto again = mc_path_count(spec, 3, 20000, 5, 1);
  CHECK(again.mean == mc.mean);
  CHECK(again.mean_square == mc.mean_square);
}
