#include "knperc/bounds.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace knperc;

TEST_CASE("zeta against known values") {
  const double pi = std::numbers::pi;
  CHECK(std::abs(zeta(2.0) - pi * pi / 6) < 1e-12);
  CHECK(std::abs(zeta(4.0) - std::pow(pi, 4) / 90) < 1e-12);
  CHECK(std::abs(zeta(1.5) - 2.612375348685488) < 1e-12);
  for (double s : {1.1, 1.5, 2.5, 3.0, 5.5, 10.0, 25.0})
    CHECK(std::abs(zeta(s) - std::riemann_zeta(s)) < 1e-10 * std::riemann_zeta(s));
  CHECK_THROWS_AS(zeta(1.0), std::domain_error);
  CHECK_THROWS_AS(zeta(0.5), std::domain_error);
}

TEST_CASE("zeta against a direct partial sum with integral tail bounds") {
  // sum_{j<J} j^{-s} + J^{1-s}/(s-1) brackets zeta(s) within J^{-s}.
  for (double s : {1.5, 2.0, 3.5}) {
    const int J = 200000;
    long double head = 0;
    for (int j = J - 1; j >= 1; --j) head += std::pow(static_cast<long double>(j), -s);
    const double lo = static_cast<double>(head + std::pow(static_cast<long double>(J), 1 - s) / (s - 1));
    CHECK(zeta(s) >= lo - 1e-12);
    CHECK(zeta(s) <= lo + std::pow(J, -s) + 1e-12);
  }
}

TEST_CASE("coincidence bound table") {
  const double expected[] = {0.693093, 0.394622, 0.268615, 0.199707};
  const int smallest[] = {6, 4, 4, 3};
  for (int d = 4; d <= 7; ++d) {
    CHECK(std::abs(cdub(d) - expected[d - 4]) < 1e-5);
    REQUIRE(smallest_percolating_k(d).has_value());
    CHECK(*smallest_percolating_k(d) == smallest[d - 4]);
  }
  CHECK_THROWS_AS(cdub(3), std::domain_error);
}

TEST_CASE("coincidence bound terms are itemized with exact heads") {
  const auto terms = cdub_terms(5);
  REQUIRE(terms.size() == 2 + 3 + 1);
  CHECK(*terms[0].exact == make_rational(1, 5));
  CHECK(*terms[1].exact == make_rational(4, 625));
  CHECK(*terms[2].exact == make_rational(6, 125));
  CHECK_FALSE(terms.back().exact.has_value());
  CHECK(sum_terms(terms) == doctest::Approx(cdub(5)));
}

TEST_CASE("refined bounds") {
  CHECK(std::abs(refined_rho_bound(4, enumerate_tau(4, 5), 5) - 0.495542) < 1e-5);
  CHECK(std::abs(refined_rho_bound(5, enumerate_tau(5, 5), 5) - 0.275703) < 1e-5);
  CHECK(std::abs(refined_rho_bound(6, enumerate_tau(6, 3), 3) - 0.242338) < 1e-5);
  CHECK(refined_rho_bound(4, enumerate_tau(4, 5), 5) < 4.0 / 8);
  CHECK(refined_rho_bound(5, enumerate_tau(5, 5), 5) < 3.0 / 10);
  CHECK(refined_rho_bound(6, enumerate_tau(6, 3), 3) < 3.0 / 12);
}

TEST_CASE("refined bound: cutoff 2 is the plain bound, larger cutoffs never exceed it") {
  for (int d = 4; d <= 6; ++d) {
    const TauPmf tau = enumerate_tau(d, 3 * d);
    CHECK(refined_rho_bound(d, tau, 2) == doctest::Approx(cdub(d)).epsilon(1e-13));
    for (int cutoff = 3; cutoff <= 3 * d; ++cutoff) {
      CAPTURE(d);
      CAPTURE(cutoff);
      CHECK(refined_rho_bound(d, tau, cutoff) <= cdub(d) + 1e-15);
      CHECK(refined_rho_bound(d, tau, cutoff) >= to_double(tau.partial_sum()) - 1e-15);
    }
  }
  CHECK_THROWS_AS(refined_rho_bound(4, enumerate_tau(4, 5), 1), std::invalid_argument);
  CHECK_THROWS_AS(refined_rho_bound(4, enumerate_tau(4, 3), 5), std::invalid_argument);
}

TEST_CASE("bound reports") {
  const auto plain = bound_report(7, 3);
  CHECK(plain.verdict == Verdict::Percolates);
  CHECK_FALSE(plain.refined_value.has_value());
  const auto weak = bound_report(4, 4);
  CHECK(weak.verdict == Verdict::Inconclusive);
  const TauPmf tau = enumerate_tau(4, 5);
  const auto refined = bound_report(4, 4, &tau, 5);
  CHECK(refined.verdict == Verdict::Percolates);
  CHECK(*refined.refined_value == doctest::Approx(0.495542).epsilon(1e-5));
  CHECK_THROWS_AS(bound_report(4, 9), std::invalid_argument);
}

TEST_CASE("R(3, d) values and the large-dimension induction") {
  const double r[] = {-0.0292277, -0.0350912, -0.0367514, -0.0364418};
  for (int d = 8; d <= 11; ++d) CHECK(std::abs(r_value(3, d) - r[d - 8]) < 1e-5);
  const auto t = largedmon_check(50);
  CHECK(t.all_ok);
  CHECK(std::abs(t.stirling_constant - 0.385831) < 1e-6);
  CHECK(t.factorial_constant < 1.115);
  CHECK(t.rows.size() == 39);
  for (const auto& row : t.rows) {
    CHECK(row.new_term_ok);
    CHECK(row.good_bound_ok);
  }
  for (const auto& [d, v] : t.r3_values) CHECK(v < 0);
  CHECK_THROWS_AS(largedmon_check(10), std::invalid_argument);
}

TEST_CASE("BnG criteria") {
  const auto c2 = default_connective_bound(2);
  CHECK(c2.upper == kConnectiveUpper2);
  CHECK(bng_subcritical(2, 2, c2) == Verdict::NoPercolation);
  CHECK(bng_subcritical(3, 2, c2) == Verdict::Inconclusive);
  CHECK(bng_supercritical_ratio() == doctest::Approx(1.583355).epsilon(1e-6));
  CHECK(bng_supercritical(4, 2) == Verdict::Percolates);
  CHECK(bng_supercritical(3, 2) == Verdict::Inconclusive);
  // generic bound c(d) <= 2d-1: k(k-1) < 2d is the resulting condition
  const auto c5 = default_connective_bound(5);
  CHECK(bng_subcritical(3, 5, c5) == Verdict::NoPercolation);
  CHECK(bng_subcritical(4, 5, c5) == Verdict::Inconclusive);
  ConnectiveConstantBound bad{2, 1.5, 2.0, "bad"};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  ConnectiveConstantBound too_big{2, 2.0, 3.5, "bad"};
  CHECK_THROWS_AS(bng_subcritical(2, 2, too_big), std::invalid_argument);
}

TEST_CASE("1-dependent constants") {
  const auto r = one_dependent_criterion(1.6);
  CHECK(r.threshold == doctest::Approx(1.52931).epsilon(1e-5));
  CHECK(r.weak_threshold == doctest::Approx(1.83924).epsilon(1e-5));
  CHECK(r.verdict == Verdict::Percolates);
  CHECK(one_dependent_criterion(1.5).verdict == Verdict::Inconclusive);
  CHECK_THROWS_AS(one_dependent_criterion(0.0), std::invalid_argument);
}
