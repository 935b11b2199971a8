#include "knperc/bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace knperc {

namespace {

// B_2, B_4, ..., B_16
constexpr std::array<long double, 8> kBernoulli = {
    1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6, -3617.0L / 510};

long double factorial(int n) {
  long double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Euler-Maclaurin correction of order m (1-based) at cut N.
long double em_term(long double s, long double N, int m) {
  long double rising = 1;
  for (int i = 0; i < 2 * m - 1; ++i) rising *= s + i;
  return kBernoulli[m - 1] / factorial(2 * m) * rising * std::pow(N, -s - 2 * m + 1);
}

}  // namespace

double zeta(double s, double tol) {
  if (!(s > 1.0)) throw std::domain_error("zeta(s) diverges for s <= 1");
  constexpr int kOrder = 6;
  long double N = 8;
  while (std::fabs(em_term(s, N, kOrder + 1)) > tol * 0.5L) N *= 2;
  const long double sl = s;
  long double sum = 0;
  for (long double j = N - 1; j >= 1; j -= 1) sum += std::pow(j, -sl);
  sum += std::pow(N, 1 - sl) / (sl - 1) + 0.5L * std::pow(N, -sl);
  for (int m = 1; m <= kOrder; ++m) sum += em_term(sl, N, m);
  return static_cast<double>(sum);
}

double sum_terms(const std::vector<BoundTerm>& terms) {
  long double s = 0;
  for (const auto& t : terms) s += t.value;
  return static_cast<double>(s);
}

namespace {

// sqrt(2 pi d) (e^{-1/13} / sqrt(2 pi))^d
long double block_amplitude(int d) {
  const long double base = std::exp(-1.0L / 13) / std::sqrt(2 * std::numbers::pi_v<long double>);
  return std::sqrt(2 * std::numbers::pi_v<long double> * d) * std::pow(base, d);
}

void require_tail_dimension(int d) {
  if (d < 4) throw std::domain_error("the coincidence bound needs d >= 4 (zeta((d-1)/2) diverges)");
}

BoundTerm factorial_term(int d, int l) {
  Rational exact(BigInt(1), BigInt(1));
  for (int i = 2; i <= l; ++i) exact *= i;
  exact /= pow(Rational(d), l);
  return {"l!/d^l, l=" + std::to_string(l), to_double(exact), exact};
}

}  // namespace

std::vector<BoundTerm> cdub_terms(int d) {
  require_tail_dimension(d);
  std::vector<BoundTerm> terms;
  const Rational p0(BigInt(1), BigInt(d));
  const Rational p2 = Rational(BigInt(1), BigInt(d) * d * d) - Rational(BigInt(1), BigInt(d) * d * d * d);
  terms.push_back({"P(tau=0) = 1/d", to_double(p0), p0});
  terms.push_back({"P(tau=2) = 1/d^3 - 1/d^4", to_double(p2), p2});
  for (int l = 3; l <= d; ++l) terms.push_back(factorial_term(d, l));
  const double tail = static_cast<double>(block_amplitude(d) * zeta((d - 1) / 2.0));
  terms.push_back({"sqrt(2 pi d) (e^{-1/13}/sqrt(2 pi))^d zeta((d-1)/2)", tail, std::nullopt});
  return terms;
}

double cdub(int d) { return sum_terms(cdub_terms(d)); }

double r_value(int k, int d) { return cdub(d) - static_cast<double>(k) / (2.0 * d); }

std::optional<int> smallest_percolating_k(int d) {
  const double u = cdub(d);
  for (int k = 1; k <= 2 * d; ++k)
    if (u < static_cast<double>(k) / (2.0 * d)) return k;
  return std::nullopt;
}

std::vector<BoundTerm> refined_rho_terms(int d, const TauPmf& tau, int cutoff) {
  require_tail_dimension(d);
  if (cutoff < 2) throw std::invalid_argument("refined bound needs an exact head up to at least l = 2");
  if (tau.d != d) throw std::invalid_argument("tau pmf dimension mismatch");
  if (tau.cutoff() < cutoff) throw std::invalid_argument("tau pmf shorter than cutoff");

  std::vector<BoundTerm> terms;
  for (int l = 0; l <= cutoff; ++l)
    terms.push_back({"P(tau=" + std::to_string(l) + ")", to_double(tau.values[l]), tau.values[l]});
  for (int l = std::max(3, cutoff + 1); l <= d; ++l) terms.push_back(factorial_term(d, l));

  // Block j is l in (jd, (j+1)d]; each l there contributes at most A j^{-s} / d.
  const long double amplitude = block_amplitude(d);
  const double s = (d - 1) / 2.0;
  long double covered_power_sum = 0;
  for (int j = 1;; ++j) {
    const int lo = j * d + 1;
    const int hi = (j + 1) * d;
    if (cutoff < lo) break;
    const int uncovered = std::max(0, hi - std::max(cutoff, lo - 1));
    const long double power = std::pow(static_cast<long double>(j), -static_cast<long double>(s));
    covered_power_sum += power;
    if (uncovered > 0) {
      const long double value = amplitude * uncovered / d * power;
      terms.push_back({"block j=" + std::to_string(j) + " (" + std::to_string(uncovered) + "/" +
                           std::to_string(d) + " uncovered)",
                       static_cast<double>(value), std::nullopt});
    }
  }
  const long double full = amplitude * (zeta(s) - covered_power_sum);
  terms.push_back({"full blocks: sqrt(2 pi d) (e^{-1/13}/sqrt(2 pi))^d (zeta((d-1)/2) - partial)",
                   static_cast<double>(full), std::nullopt});
  return terms;
}

double refined_rho_bound(int d, const TauPmf& tau, int cutoff) {
  return sum_terms(refined_rho_terms(d, tau, cutoff));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Percolates: return "percolates";
    case Verdict::NoPercolation: return "no-percolation";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

BoundReport bound_report(int d, int k, const TauPmf* tau, int cutoff) {
  if (k < 1 || k > 2 * d) throw std::invalid_argument("k must satisfy 1 <= k <= 2d");
  BoundReport r;
  r.d = d;
  r.k = k;
  r.threshold = static_cast<double>(k) / (2.0 * d);
  r.terms = cdub_terms(d);
  r.cdub_value = sum_terms(r.terms);
  double used = r.cdub_value;
  if (tau != nullptr) {
    const int c = cutoff >= 0 ? cutoff : tau->cutoff();
    r.terms = refined_rho_terms(d, *tau, c);
    r.refined_value = sum_terms(r.terms);
    used = *r.refined_value;
  }
  r.verdict = used < r.threshold ? Verdict::Percolates : Verdict::Inconclusive;
  return r;
}

LargeDimensionTrace largedmon_check(int d_max) {
  if (d_max < 11) throw std::invalid_argument("largedmon_check needs d_max >= 11");
  LargeDimensionTrace trace;
  trace.stirling_constant = static_cast<double>(std::sqrt(12.0L / 11.0L) * std::exp(-1.0L / 13) /
                                                std::sqrt(2 * std::numbers::pi_v<long double>));
  trace.stirling_ok = trace.stirling_constant < 11.0 / 12.0;
  trace.factorial_constant = static_cast<double>(factorial(12) / std::pow(12.0L, 8));
  trace.factorial_ok = trace.factorial_constant < 1.115;
  bool ok = trace.stirling_ok && trace.factorial_ok;

  for (int d = 7; d <= d_max; ++d) {
    const double r = r_value(3, d);
    trace.r3_values.emplace_back(d, r);
    ok = ok && r < 0;
  }
  for (int d = 11; d < d_max; ++d) {
    LargeDimensionRow row;
    row.d = d;
    const long double n1 = d + 1;
    long double new_term = 1;
    for (int i = 1; i <= d + 1; ++i) new_term *= i / n1;
    const long double dd = d;
    const long double room =
        dd / n1 * (1 / (dd * dd * dd) - 1 / (dd * dd * dd * dd)) - (1 / (n1 * n1 * n1) - 1 / (n1 * n1 * n1 * n1));
    row.new_term = static_cast<double>(new_term);
    row.new_term_room = static_cast<double>(room);
    row.new_term_ok = new_term <= room;
    const long double n1_4 = n1 * n1 * n1 * n1;
    const long double via12 = factorial(12) / std::pow(n1, 12);
    const long double via12_8 = factorial(12) / (std::pow(12.0L, 8) * n1_4);
    // the first two links are equalities at d = 11 and d = 12
    const long double slack = 1 + 1e-15L;
    row.factorial_chain_ok = new_term <= via12 * slack && via12 <= via12_8 * slack && via12_8 < 1.115L / n1_4;
    row.room_constant_ok = (2 * dd * dd * dd - 2 * dd - 1) / (dd * dd * dd * n1_4) > 1.99L / n1_4;
    row.r_next = r_value(3, d + 1);
    row.r_scaled = static_cast<double>(dd / n1) * r_value(3, d);
    row.good_bound_ok = row.r_next <= row.r_scaled;
    ok = ok && row.new_term_ok && row.factorial_chain_ok && row.good_bound_ok;
    trace.rows.push_back(row);
  }
  trace.all_ok = ok;
  return trace;
}

void ConnectiveConstantBound::validate() const {
  const double eps = 1e-12;
  if (d < 1) throw std::invalid_argument("connective bound: d must be >= 1");
  if (!(lower >= d - eps && lower <= upper + eps && upper <= 2 * d - 1 + eps))
    throw std::invalid_argument("connective bound must satisfy d <= lower <= upper <= 2d-1");
}

ConnectiveConstantBound default_connective_bound(int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (d == 2) return {2, 2.0, kConnectiveUpper2, "upper bound c(2) <= 2.679192495 (Ponitz-Tittmann)"};
  return {d, static_cast<double>(d), static_cast<double>(2 * d - 1), "generic d <= c(d) <= 2d-1"};
}

Verdict bng_subcritical(int k, int d, const ConnectiveConstantBound& c) {
  c.validate();
  if (c.d != d) throw std::invalid_argument("connective bound is for a different dimension");
  if (k < 1 || k > 2 * d) throw std::invalid_argument("k must satisfy 1 <= k <= 2d");
  const double lhs = static_cast<double>(k) * (k - 1) * c.upper;
  const double rhs = 2.0 * d * (2.0 * d - 1);
  return lhs < rhs ? Verdict::NoPercolation : Verdict::Inconclusive;
}

double bng_supercritical_ratio(double c2_upper) {
  if (!(c2_upper > 1.0)) throw std::invalid_argument("c(2) upper bound must exceed 1");
  return std::sqrt(4.0 * (1.0 - 1.0 / c2_upper));
}

Verdict bng_supercritical(int k, int d, double c2_upper) {
  if (d < 1 || k < 1 || k > 2 * d) throw std::invalid_argument("k must satisfy 1 <= k <= 2d");
  return k > d * bng_supercritical_ratio(c2_upper) ? Verdict::Percolates : Verdict::Inconclusive;
}

OneDependentResult one_dependent_criterion(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  OneDependentResult r;
  r.threshold = 2.0 * std::sqrt(kOneDependentAsymptotic);
  r.weak_threshold = 2.0 * std::sqrt(kOneDependentPlanar);
  r.verdict = alpha * alpha / 4.0 > kOneDependentAsymptotic ? Verdict::Percolates : Verdict::Inconclusive;
  return r;
}

}  // namespace knperc
