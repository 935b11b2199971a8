#include "knperc/saw.hpp"

#include "knperc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace knperc {

std::uint64_t SawCounts::c(int n) const {
  if (n == 0) return 1;
  if (n < 0 || n > n_max()) throw std::out_of_range("c_n not enumerated for this n");
  return counts[n - 1];
}

namespace {

// Occupancy of a walk of length <= n_max started at the origin.
class Occupancy {
 public:
  Occupancy(int d, int n_max) : d_(d), n_(n_max), side_(2 * n_max + 1) {
    long double volume = std::pow(static_cast<long double>(side_), d);
    if (volume <= (1 << 24)) grid_.assign(static_cast<std::size_t>(volume), 0);
  }

  bool occupied(const Vertex& v) const {
    if (!grid_.empty()) return grid_[index(v)] != 0;
    return std::find(path_.begin(), path_.end(), v) != path_.end();
  }
  void push(const Vertex& v) {
    if (!grid_.empty()) grid_[index(v)] = 1;
    path_.push_back(v);
  }
  void pop() {
    if (!grid_.empty()) grid_[index(path_.back())] = 0;
    path_.pop_back();
  }
  const std::vector<Vertex>& path() const { return path_; }

 private:
  std::size_t index(const Vertex& v) const {
    std::size_t idx = 0;
    for (int i = d_ - 1; i >= 0; --i) idx = idx * side_ + static_cast<std::size_t>(v[i] + n_);
    return idx;
  }

  int d_;
  int n_;
  std::size_t side_;
  std::vector<std::uint8_t> grid_;
  std::vector<Vertex> path_;
};

// A walk prefix in reduced form: the path, whether it has left the first axis,
// and the number of symmetric images it stands for.
struct Prefix {
  std::vector<Vertex> path;
  bool turned = false;
  std::uint64_t weight = 0;
};

void for_each_step(int d, bool turned, auto&& fn) {
  if (!turned) {
    fn(Direction{0, 1}, false, 1);
    if (d >= 2) fn(Direction{1, 1}, true, static_cast<std::uint64_t>(2 * (d - 1)));
    return;
  }
  for (int di = 0; di < 2 * d; ++di) fn(Direction::from_index(di), true, 1);
}

void dfs(int d, int n_max, Occupancy& occ, bool turned, std::uint64_t weight, std::vector<std::uint64_t>& counts) {
  const int depth = static_cast<int>(occ.path().size()) - 1;
  if (depth == n_max) return;
  const Vertex here = occ.path().back();
  for_each_step(d, turned, [&](Direction dir, bool now_turned, std::uint64_t mult) {
    const Vertex next = here.step(dir);
    if (occ.occupied(next)) return;
    counts[depth] += weight * mult;
    occ.push(next);
    dfs(d, n_max, occ, now_turned, weight * mult, counts);
    occ.pop();
  });
}

}  // namespace

SawCounts count_saw(int d, int n_max, std::uint64_t budget, unsigned workers) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("count_saw: need 1 <= d <= 8");
  if (n_max < 1) throw std::invalid_argument("count_saw: need n_max >= 1");
  const long double work = 2.0L * d * std::pow(2.0L * d - 1, n_max - 1);
  check_budget("count_saw", work > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(work), budget);

  SawCounts out;
  out.d = d;
  out.counts.assign(n_max, 0);

  // Expand breadth-first to a handful of prefixes, then finish each one depth-first.
  const int split = std::min(n_max, 4);
  std::vector<Prefix> frontier{{{Vertex::origin(d).step({0, 1})}, false, static_cast<std::uint64_t>(2 * d)}};
  frontier.front().path.insert(frontier.front().path.begin(), Vertex::origin(d));
  out.counts[0] = 2 * d;
  for (int len = 1; len < split; ++len) {
    std::vector<Prefix> next;
    for (const Prefix& p : frontier) {
      for_each_step(d, p.turned, [&](Direction dir, bool now_turned, std::uint64_t mult) {
        const Vertex v = p.path.back().step(dir);
        if (std::find(p.path.begin(), p.path.end(), v) != p.path.end()) return;
        Prefix q{p.path, now_turned, p.weight * mult};
        q.path.push_back(v);
        out.counts[len] += q.weight;
        next.push_back(std::move(q));
      });
    }
    frontier = std::move(next);
  }

  auto partial = parallel_map(frontier.size(), workers, [&](std::size_t i) {
    std::vector<std::uint64_t> counts(n_max, 0);
    Occupancy occ(d, n_max);
    for (const Vertex& v : frontier[i].path) occ.push(v);
    dfs(d, n_max, occ, frontier[i].turned, frontier[i].weight, counts);
    return counts;
  });
  for (const auto& counts : partial)
    for (int n = 0; n < n_max; ++n) out.counts[n] += counts[n];
  return out;
}

namespace {

struct CircuitSearch {
  int n;
  int side;
  std::vector<std::uint8_t> grid;  // i in [-n, n], j in [0, n]
  std::vector<std::pair<int, int>> path;
  std::uint64_t enclosed = 0;
  std::uint64_t polygons = 0;

  explicit CircuitSearch(int len) : n(len), side(2 * len + 1), grid(static_cast<std::size_t>(side) * (len + 1), 0) {}

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * side + (i + n); }

  bool allowed(int i, int j) const {
    if (j < 0 || (j == 0 && i <= 0) || j > n || i < -n || i > n) return false;
    return grid[index(i, j)] == 0;
  }

  // Number of primal sites (a, b) such that the circuit surrounds the origin when
  // translated by (-a, -b); equivalently the translations it is counted for.
  std::uint64_t translations() const {
    std::map<int, std::vector<int>> rows;  // row j -> x of vertical edges between j and j+1
    const std::size_t len = path.size();
    for (std::size_t t = 0; t < len; ++t) {
      const auto [i0, j0] = path[t];
      const auto [i1, j1] = path[(t + 1) % len];
      if (i0 == i1) rows[std::min(j0, j1)].push_back(i0);
    }
    std::uint64_t total = 0;
    for (auto& [row, xs] : rows) {
      std::sort(xs.begin(), xs.end());
      // Ray to +x crosses an odd number of edges iff the start lies between x_{2r} and x_{2r+1}.
      for (std::size_t r = 0; r + 1 < xs.size(); r += 2) total += static_cast<std::uint64_t>(xs[r + 1] - xs[r]);
    }
    return total;
  }

  void walk(int i, int j) {
    const int steps = static_cast<int>(path.size());
    if (steps == n) {
      if (i == 0 && j == 1) {
        ++polygons;
        enclosed += translations();
      }
      return;
    }
    if (std::abs(i) + std::abs(j - 1) > n - steps) return;
    static constexpr int kDi[4] = {1, -1, 0, 0};
    static constexpr int kDj[4] = {0, 0, 1, -1};
    for (int s = 0; s < 4; ++s) {
      const int ni = i + kDi[s];
      const int nj = j + kDj[s];
      if (!allowed(ni, nj)) continue;
      grid[index(ni, nj)] = 1;
      path.emplace_back(ni, nj);
      walk(ni, nj);
      path.pop_back();
      grid[index(ni, nj)] = 0;
    }
  }
};

}  // namespace

CircuitCount count_circuits(int n, std::uint64_t budget) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("circuits exist only for even n >= 4");
  const long double work = std::pow(3.0L, n - 1);
  check_budget("count_circuits", work > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(work), budget);

  CircuitSearch search(n);
  search.grid[search.index(0, 0)] = 1;
  search.path.emplace_back(0, 0);
  search.grid[search.index(1, 0)] = 1;
  search.path.emplace_back(1, 0);
  search.walk(1, 0);

  CircuitCount out;
  out.n = n;
  out.count = search.enclosed;
  out.bound = static_cast<std::uint64_t>(n) * count_saw(2, n - 1, budget, 1).c(n - 1);
  if (out.count > out.bound) throw std::logic_error("circuit count exceeds n c_{n-1}(2)");
  return out;
}

double peierls_tail(double closed_prob, double growth_upper, int after) {
  const double x = closed_prob * growth_upper;
  if (!(x < 1.0)) throw std::domain_error("Peierls sum diverges: growth * closed_prob >= 1");
  if (!(growth_upper > 0.0) || closed_prob < 0.0) throw std::invalid_argument("need growth > 0, closed_prob >= 0");
  const double N = after;
  return std::pow(x, N + 1) * ((N + 1) - N * x) / ((1 - x) * (1 - x)) / growth_upper;
}

PeierlsReport peierls_bound(const Rational& closed_prob, const SawCounts& saw, int n_start, int n_exact,
                            double growth_upper) {
  if (saw.d != 2) throw std::invalid_argument("Peierls sums use planar walk counts (d = 2)");
  if (closed_prob <= 0 || closed_prob >= 1) throw std::invalid_argument("closed_prob must lie in (0, 1)");
  if (n_start < 1 || n_exact < 1) throw std::invalid_argument("n_start and n_exact must be >= 1");
  if (n_exact - 1 > saw.n_max()) throw std::invalid_argument("walk counts do not reach n_exact - 1");
  const double p = to_double(closed_prob);
  // Validates convergence before anything else is computed.
  peierls_tail(p, growth_upper, n_exact);

  PeierlsReport r;
  r.closed_prob = closed_prob;
  r.growth_upper = growth_upper;
  r.n_start = n_start;
  r.n_exact = n_exact;
  std::vector<PeierlsTerm> all;  // n = 1..n_exact
  for (int n = 1; n <= n_exact; ++n) {
    PeierlsTerm t;
    t.n = n;
    t.walks = saw.c(n - 1);
    t.value = Rational(BigInt(n) * t.walks) * pow(closed_prob, n);
    all.push_back(t);
  }
  auto bound_from = [&](int start, Rational* partial) {
    Rational sum = 0;
    for (int n = std::max(start, 1); n <= n_exact; ++n) sum += all[n - 1].value;
    if (partial) *partial = sum;
    return to_double(sum) + peierls_tail(p, growth_upper, std::max(n_exact, start - 1));
  };

  for (int n = n_start; n <= n_exact; ++n) r.terms.push_back(all[n - 1]);
  r.total_bound = bound_from(n_start, &r.partial_sum);
  r.tail_bound = peierls_tail(p, growth_upper, std::max(n_exact, n_start - 1));
  for (int m = 1; m <= 1'000'000; ++m) {
    if (bound_from(4 * m, nullptr) < 1.0) {
      r.m_star = m;
      break;
    }
  }
  return r;
}

}  // namespace knperc
