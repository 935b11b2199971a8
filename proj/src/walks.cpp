#include "knperc/walks.hpp"

#include "knperc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace knperc {

Rational TauPmf::partial_sum() const {
  Rational s = 0;
  for (const auto& v : values) s += v;
  return s;
}

namespace {

using Diff = std::vector<int>;

Diff canonical(Diff v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool is_zero(const Diff& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

// Successor classes of a representative with multiplicities among the d^2 step pairs
// (i, j) with i != j. Diagonal pairs are handled by the caller.
std::map<Diff, std::uint64_t> off_diagonal_moves(const Diff& rep) {
  std::map<Diff, std::uint64_t> out;
  const int d = static_cast<int>(rep.size());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      Diff next = rep;
      ++next[i];
      --next[j];
      ++out[canonical(std::move(next))];
    }
  }
  return out;
}

}  // namespace

TauPmf enumerate_tau(int d, int cutoff, std::uint64_t budget) {
  if (d < 2) throw std::invalid_argument("enumerate_tau requires d >= 2");
  if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");

  // counts[C] = number of pairs of length-m step prefixes, not yet coincided,
  // whose difference vector lies in class C.
  std::map<Diff, BigInt> counts{{Diff(d, 0), BigInt(1)}};
  std::map<Diff, std::map<Diff, std::uint64_t>> moves;
  TauPmf pmf;
  pmf.d = d;
  const BigInt d2 = BigInt(d) * d;
  BigInt denominator = d2;  // d^{2(m+1)}
  std::uint64_t work = 0;

  for (int m = 0; m <= cutoff; ++m) {
    work += counts.size() * static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
    check_budget("enumerate_tau", work, budget);
    std::map<Diff, BigInt> next;
    BigInt absorbed = 0;
    for (const auto& [cls, weight] : counts) {
      if (is_zero(cls)) {
        absorbed += weight * d;  // same site, same step
      } else {
        next[cls] += weight * d;  // same step elsewhere keeps the difference
      }
      auto it = moves.find(cls);
      if (it == moves.end()) it = moves.emplace(cls, off_diagonal_moves(cls)).first;
      for (const auto& [succ, mult] : it->second) next[succ] += weight * mult;
    }
    pmf.values.emplace_back(absorbed, denominator);
    denominator *= d2;
    counts = std::move(next);
  }
  return pmf;
}

Rational hypergeometric_mean(int d, int k) {
  if (d < 1 || k < 0 || k > 2 * d) throw std::invalid_argument("hypergeometric_mean: need 0 <= k <= 2d");
  BigInt num = 0;
  for (int l = 0; l <= k; ++l) num += BigInt(l) * binomial(d, l) * binomial(d, k - l);
  return Rational(num, binomial(2 * d, k));
}

BigInt count_monotone_paths(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("count_monotone_paths: need d >= 1, n >= 0");
  // Level-wise counts keyed by the composition of the current level.
  std::map<std::vector<int>, BigInt> level{{std::vector<int>(d, 0), BigInt(1)}};
  for (int m = 0; m < n; ++m) {
    std::map<std::vector<int>, BigInt> next;
    for (const auto& [v, c] : level) {
      for (int i = 0; i < d; ++i) {
        auto w = v;
        ++w[i];
        next[w] += c;
      }
    }
    level = std::move(next);
  }
  BigInt total = 0;
  for (const auto& [v, c] : level) total += c;
  return total;
}

Rational expected_open_paths(const ModelSpec& spec, int n) {
  spec.validate();
  if (spec.variant != Variant::DnG) throw std::invalid_argument("expected_open_paths is defined for DnG");
  if (spec.k > spec.d) throw std::invalid_argument("expected_open_paths requires k <= d");
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  const Rational closed = pow(Rational(BigInt(spec.k), BigInt(2)), n);
  const Rational counted =
      Rational(count_monotone_paths(spec.d, n)) * pow(Rational(BigInt(spec.k), BigInt(2 * spec.d)), n);
  if (closed != counted) throw std::logic_error("E[N_n]: closed form and path count disagree");
  return closed;
}

BigInt PathPairStats::total() const {
  BigInt s = 0;
  for (const auto& [kl, c] : counts) s += c;
  return s;
}

PathPairStats path_pair_stats(int d, int n, std::uint64_t budget) {
  if (d < 1 || n < 0) throw std::invalid_argument("path_pair_stats: need d >= 1, n >= 0");
  struct Key {
    Diff diff;
    int k;
    int l;
    bool operator<(const Key& o) const { return std::tie(diff, k, l) < std::tie(o.diff, o.k, o.l); }
  };
  std::map<Key, BigInt> states{{Key{Diff(d, 0), 0, 0}, BigInt(1)}};
  std::uint64_t work = 0;
  for (int m = 0; m < n; ++m) {
    work += states.size() * static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
    check_budget("path_pair_stats", work, budget);
    std::map<Key, BigInt> next;
    for (const auto& [key, c] : states) {
      const bool together = is_zero(key.diff);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          Key succ = key;
          if (together) {
            if (i == j) {
              ++succ.k;
            } else {
              ++succ.l;
              ++succ.diff[i];
              --succ.diff[j];
            }
          } else if (i != j) {
            ++succ.diff[i];
            --succ.diff[j];
          }
          succ.diff = canonical(std::move(succ.diff));
          next[succ] += c;
        }
      }
    }
    states = std::move(next);
  }
  PathPairStats stats;
  stats.d = d;
  stats.n = n;
  for (const auto& [key, c] : states) stats.counts[{key.k, key.l}] += c;
  return stats;
}

Rational second_moment_from_stats(const ModelSpec& spec, const PathPairStats& stats) {
  const int nd = 2 * spec.d;
  const Rational p(BigInt(spec.k), BigInt(nd));
  const Rational q(BigInt(spec.k) * (spec.k - 1), BigInt(nd) * (nd - 1));
  Rational total = 0;
  for (const auto& [kl, c] : stats.counts) {
    const auto [k, l] = kl;
    total += Rational(c) * pow(p, k) * pow(q, l) * pow(p, 2 * (stats.n - k - l));
  }
  return total;
}

Rational second_moment_exact(const ModelSpec& spec, int n, std::uint64_t budget) {
  spec.validate();
  if (spec.variant != Variant::DnG) throw std::invalid_argument("second_moment_exact is defined for DnG");
  return second_moment_from_stats(spec, path_pair_stats(spec.d, n, budget));
}

namespace {

std::uint64_t open_path_count(ChoiceField& field, int n) {
  const int d = field.d();
  std::unordered_map<Vertex, std::uint64_t, VertexHash> level{{Vertex::origin(d), 1}};
  for (int m = 0; m < n; ++m) {
    std::unordered_map<Vertex, std::uint64_t, VertexHash> next;
    for (const auto& [v, c] : level) {
      const ChoiceSet choice = field.compute(v);
      for (int i = 0; i < d; ++i) {
        const Direction up{i, 1};
        if (choice.contains(up)) next[v.step(up)] += c;
      }
    }
    level = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [v, c] : level) total += c;
  return total;
}

}  // namespace

PathCountMoments mc_path_count(const ModelSpec& spec, int n, std::uint64_t trials, std::uint64_t seed,
                               unsigned workers) {
  spec.validate();
  if (spec.variant != Variant::DnG) throw std::invalid_argument("mc_path_count is defined for DnG");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  auto counts = parallel_map(trials, workers, [&](std::size_t t) {
    ChoiceField field(spec, derive_seed(seed, t));
    return open_path_count(field, n);
  });
  const double nt = static_cast<double>(trials);
  double s1 = 0, s2 = 0, s4 = 0;
  for (auto c : counts) {
    const double x = static_cast<double>(c);
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  PathCountMoments m;
  m.trials = trials;
  m.mean = s1 / nt;
  m.mean_square = s2 / nt;
  if (trials > 1) {
    const double var1 = std::max(0.0, (s2 - nt * m.mean * m.mean) / (nt - 1));
    const double var2 = std::max(0.0, (s4 - nt * m.mean_square * m.mean_square) / (nt - 1));
    m.mean_std_error = std::sqrt(var1 / nt);
    m.mean_square_std_error = std::sqrt(var2 / nt);
  }
  return m;
}

}  // namespace knperc
