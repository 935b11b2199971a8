#pragma once

// Closed-form percolation criteria: the second-moment upper bound on the
// coincidence probability, its refinement with exact coincidence-time heads,
// the large-dimension induction, and the BnG sub/supercritical tests.

#include "knperc/walks.hpp"

#include <optional>
#include <string>
#include <vector>

namespace knperc {

/// Riemann zeta for real s > 1 with absolute error <= tol (Euler-Maclaurin with
/// the first omitted correction as remainder bound). Throws std::domain_error for s <= 1.
double zeta(double s, double tol = 1e-13);

/// One summand of a bound, with its exact value when it is rational.
struct BoundTerm {
  std::string label;
  double value = 0.0;
  std::optional<Rational> exact;
};

double sum_terms(const std::vector<BoundTerm>& terms);

/// Itemized right-hand side of the coincidence bound
///   1/d + 1/d^3 - 1/d^4 + sum_{l=3}^d l!/d^l + sqrt(2 pi d) (e^{-1/13}/sqrt(2 pi))^d zeta((d-1)/2).
/// Requires d >= 4 (std::domain_error otherwise: the zeta argument would be <= 1).
std::vector<BoundTerm> cdub_terms(int d);
double cdub(int d);

/// cdub(d) - k/(2d).
double r_value(int k, int d);

/// Smallest k in [1, 2d] with cdub(d) < k/(2d), or nullopt.
std::optional<int> smallest_percolating_k(int d);

/// Upper bound on P(tau_d < infinity) using the exact head P(tau_d = l), l <= cutoff,
/// the factorial bounds for cutoff < l <= d, and the block tail bound weighted by the
/// fraction of each block not already covered by the exact head.
std::vector<BoundTerm> refined_rho_terms(int d, const TauPmf& tau, int cutoff);
double refined_rho_bound(int d, const TauPmf& tau, int cutoff);

enum class Verdict { Percolates, NoPercolation, Inconclusive };
std::string to_string(Verdict v);

struct BoundReport {
  int d = 0;
  int k = 0;
  double cdub_value = 0.0;
  std::optional<double> refined_value;
  double threshold = 0.0;  // k/(2d)
  Verdict verdict = Verdict::Inconclusive;
  std::vector<BoundTerm> terms;
};

/// Percolates iff (refined, else cdub) < k/(2d). `tau` enables the refinement.
BoundReport bound_report(int d, int k, const TauPmf* tau = nullptr, int cutoff = -1);

struct LargeDimensionRow {
  int d = 0;
  double new_term = 0.0;       // (d+1)!/(d+1)^{d+1}
  double new_term_room = 0.0;  // d/(d+1)(1/d^3 - 1/d^4) - (1/(d+1)^3 - 1/(d+1)^4)
  bool new_term_ok = false;
  double r_next = 0.0;    // R(3, d+1)
  double r_scaled = 0.0;  // d/(d+1) R(3, d)
  bool good_bound_ok = false;
  bool factorial_chain_ok = false;  // new_term <= 12!/(d+1)^12 <= 12!/(12^8 (d+1)^4) < 1.115/(d+1)^4
  bool room_constant_ok = false;    // (2d^3-2d-1)/(d^3 (d+1)^4) > 1.99/(d+1)^4; false for d <= 14, not part of all_ok
};

struct LargeDimensionTrace {
  double stirling_constant = 0.0;  // sqrt(12/11) e^{-1/13} / sqrt(2 pi)
  bool stirling_ok = false;        // < 11/12
  double factorial_constant = 0.0; // 12!/12^8
  bool factorial_ok = false;       // < 1.115
  std::vector<LargeDimensionRow> rows;             // 11 <= d < d_max
  std::vector<std::pair<int, double>> r3_values;   // R(3, d), 7 <= d <= d_max
  bool all_ok = false;
};

/// Numerical verification of the induction step for 11 <= d <= d_max. Requires d_max >= 11.
LargeDimensionTrace largedmon_check(int d_max);

/// Bounds on the connective constant c(d) with a provenance tag.
struct ConnectiveConstantBound {
  int d = 2;
  double lower = 2.0;
  double upper = 3.0;
  std::string source;

  /// Throws std::invalid_argument unless d <= lower <= upper <= 2d-1.
  void validate() const;
};

/// c(2) <= 2.679192495 (Ponitz-Tittmann); otherwise the generic d <= c(d) <= 2d-1.
ConnectiveConstantBound default_connective_bound(int d);

inline constexpr double kConnectiveUpper2 = 2.679192495;

/// NoPercolation iff k(k-1) * c_upper < 2d(2d-1).
Verdict bng_subcritical(int k, int d, const ConnectiveConstantBound& c);

/// sqrt(4(1 - 1/c2_upper)), about 1.583355 for the default bound.
double bng_supercritical_ratio(double c2_upper = kConnectiveUpper2);

/// Percolates iff k > d * bng_supercritical_ratio(c2_upper).
Verdict bng_supercritical(int k, int d, double c2_upper = kConnectiveUpper2);

struct OneDependentResult {
  Verdict verdict = Verdict::Inconclusive;  // Percolates means "for all d large enough"
  double threshold = 0.0;       // 2 sqrt(0.5847)
  double weak_threshold = 0.0;  // 2 sqrt(0.8457)
};

inline constexpr double kOneDependentAsymptotic = 0.5847;
inline constexpr double kOneDependentPlanar = 0.8457;

/// Percolates iff alpha^2/4 > 0.5847. Throws std::invalid_argument for alpha <= 0.
OneDependentResult one_dependent_criterion(double alpha);

}  // namespace knperc
