#include "knperc/coupling.hpp"

#include "knperc/errors.hpp"
#include "knperc/rng.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace knperc {

namespace {
constexpr std::uint64_t kKernelStream = 0x6b65726e656cULL;
}

ColumnField::ColumnField(int k, int d, std::uint64_t seed)
    : k_(k), d_(d), source_((d >= 1 && d < kMaxDim) ? d + 1 : 2, k + 1, seed),
      kernel_seed_(derive_seed(seed, kKernelStream)) {
  if (d < 1 || d + 1 > kMaxDim) throw std::invalid_argument("column field needs 1 <= d <= 7");
  if (k < 1 || k > 2 * d) throw std::invalid_argument("column field needs 1 <= k <= 2d");
}

Vertex ColumnField::lift(const Vertex& planar, int level) const {
  Vertex v(d_ + 1);
  for (int i = 0; i < d_; ++i) v[i] = planar[i];
  v[d_] = level;
  return v;
}

std::uint64_t ColumnField::kernel_key(const Vertex& planar, int level) const {
  const Vertex v = lift(planar, level);
  return hash_coords(kernel_seed_, v.coords());
}

ChoiceSet DerivedChoice::as_set() const {
  ChoiceSet s;
  for (Direction dir : directions) s.insert(dir);
  return s;
}

DerivedChoice derive_choice(ColumnField& col, const Vertex& planar, int start_level, int level_budget) {
  const int d = col.d();
  const int k = col.k();
  const Direction up{d, 1};
  const Direction down{d, -1};

  auto planar_part = [d](ChoiceSet s) {
    std::vector<Direction> out;
    for (int di = 0; di < 2 * d; ++di)
      if (s.contains_index(di)) out.push_back(Direction::from_index(di));
    return out;
  };

  DerivedChoice result;
  result.planar = planar;
  result.start_level = start_level;
  const ChoiceSet here = col.at(planar, start_level);
  std::vector<Direction> base = planar_part(here);
  CounterStream rng(col.kernel_key(planar, start_level));

  if (static_cast<int>(base.size()) >= k) {
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(base.size() - i));
      std::swap(base[i], base[j]);
    }
    base.resize(k);
    result.directions = base;
    result.levels.assign(k, start_level);
    return result;
  }

  if (static_cast<int>(base.size()) != k - 1 || !here.contains(up) || !here.contains(down))
    throw std::logic_error("column kernel: fewer than k planar picks without both vertical arrows");

  const Direction vertical = rng.below(2) == 0 ? up : down;
  result.vertical = vertical.sign;
  int level = start_level;
  while (true) {
    if (!col.at(planar, level).contains(vertical))
      throw std::logic_error("column kernel: vertical arrow missing while following the column");
    level += vertical.sign;
    if (++result.depth > level_budget)
      throw BudgetExceeded("derive_choice level walk", static_cast<std::uint64_t>(result.depth),
                           static_cast<std::uint64_t>(level_budget));
    std::vector<Direction> fresh;
    for (Direction dir : planar_part(col.at(planar, level)))
      if (std::find(base.begin(), base.end(), dir) == base.end()) fresh.push_back(dir);
    if (!fresh.empty()) {
      result.directions = base;
      result.levels.assign(base.size(), start_level);
      result.directions.push_back(fresh[rng.below(fresh.size())]);
      result.levels.push_back(level);
      return result;
    }
  }
}

namespace {

struct Discovery {
  int level = 0;
  Vertex parent;
  bool root = true;
};

// Origin-to-`end` source path through the recorded discoveries.
std::vector<Vertex> lift_path(const ColumnField& col, const std::unordered_map<Vertex, Discovery, VertexHash>& found,
                              const Vertex& end) {
  std::vector<Vertex> chain{end};
  while (!found.at(chain.back()).root) chain.push_back(found.at(chain.back()).parent);
  std::reverse(chain.begin(), chain.end());

  std::vector<Vertex> path{col.lift(chain.front(), 0)};
  for (std::size_t t = 1; t < chain.size(); ++t) {
    const int from = found.at(chain[t - 1]).level;
    const int to = found.at(chain[t]).level;
    const int sign = to >= from ? 1 : -1;
    for (int l = from; l != to; l += sign) path.push_back(col.lift(chain[t - 1], l + sign));
    path.push_back(col.lift(chain[t], to));
  }
  return path;
}

}  // namespace

bool validate_certificate(ColumnField& col, const std::vector<Vertex>& path, int n) {
  if (path.empty() || !(path.front() == Vertex::origin(col.d() + 1))) return false;
  bool reached = path.front().max_norm() >= n;
  for (std::size_t t = 1; t < path.size(); ++t) {
    const Vertex& a = path[t - 1];
    const Vertex& b = path[t];
    int axis = -1;
    int sign = 0;
    for (int i = 0; i < a.dim(); ++i) {
      const int diff = b[i] - a[i];
      if (diff == 0) continue;
      if (axis >= 0 || (diff != 1 && diff != -1)) return false;
      axis = i;
      sign = diff;
    }
    if (axis < 0 || !col.source().choice(a).contains(Direction{axis, sign})) return false;
    reached = reached || b.max_norm() >= n;
  }
  return reached;
}

CoupledResult explore_coupled(int k, int d, int n, std::uint64_t seed, int level_budget) {
  if (n < 1) throw std::invalid_argument("box half-side must be >= 1");
  ColumnField col(k, d, seed);
  const BoxRegion box{d, n};
  CoupledResult out;

  std::unordered_map<Vertex, Discovery, VertexHash> found;
  std::vector<Vertex> queue{Vertex::origin(d)};
  found[queue.front()] = Discovery{};
  out.derived.visited_count = 1;
  std::optional<Vertex> hit;

  for (std::size_t head = 0; head < queue.size() && !hit; ++head) {
    const Vertex x = queue[head];
    const DerivedChoice dc = derive_choice(col, x, found.at(x).level, level_budget);
    out.max_depth = std::max(out.max_depth, dc.depth);
    std::vector<std::size_t> order(dc.directions.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return dc.directions[a].index() < dc.directions[b].index(); });
    for (std::size_t t : order) {
      const Vertex y = x.step(dc.directions[t]);
      if (!box.contains(y) || found.count(y)) continue;
      found[y] = Discovery{dc.levels[t], x, false};
      ++out.derived.visited_count;
      queue.push_back(y);
      if (box.on_boundary(y)) {
        hit = y;
        break;
      }
    }
  }
  out.derived.reached_boundary = hit.has_value();
  out.derived.frontier_exhausted = !hit.has_value();

  out.source = explore(col.source(), Variant::DnG, BoxRegion{d + 1, n}, ExploreMode::Out);
  if (hit) {
    out.certificate = lift_path(col, found, *hit);
    out.certificate_valid = validate_certificate(col, out.certificate, n);
    if (!out.certificate_valid) throw std::logic_error("coupling certificate is not an open source path");
    if (!out.source.reached_boundary)
      throw std::logic_error("derived cluster reaches the boundary but the source cluster does not");
  }
  return out;
}

MonotonePairResult monotone_pair(const ModelSpec& spec, int n, std::uint64_t seed) {
  spec.validate();
  if (spec.variant == Variant::XnG) throw std::invalid_argument("XnG is not monotone in k");
  if (spec.k >= 2 * spec.d) throw std::invalid_argument("monotone pair needs k < 2d");
  ChoiceField small(spec.d, spec.k, seed);
  ChoiceField large(spec.d, spec.k + 1, seed);
  const BoxRegion box{spec.d, n};
  ExploreOptions opts;
  opts.stop = StopRule::Exhaust;
  opts.keep_sample = true;
  const ExploreMode mode = default_mode(spec.variant);
  MonotonePairResult r;
  r.smaller = explore(small, spec.variant, box, mode, opts);
  r.larger = explore(large, spec.variant, box, mode, opts);
  std::unordered_set<Vertex, VertexHash> big(r.larger.visited_sample.begin(), r.larger.visited_sample.end());
  for (const Vertex& v : r.smaller.visited_sample)
    if (!big.count(v)) throw std::logic_error("k-cluster not contained in the (k+1)-cluster");
  if (r.smaller.reached_boundary && !r.larger.reached_boundary)
    throw std::logic_error("k-cluster reaches the boundary but the (k+1)-cluster does not");
  return r;
}

std::vector<ChoiceSet> sample_derived_choices(int k, int d, std::uint64_t samples, std::uint64_t seed,
                                              unsigned workers) {
  return parallel_map(samples, workers, [&](std::size_t s) {
    ColumnField col(k, d, derive_seed(seed, s));
    return derive_choice(col, Vertex::origin(d), 0).as_set();
  });
}

}  // namespace knperc
