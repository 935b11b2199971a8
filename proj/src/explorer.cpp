#include "knperc/explorer.hpp"

#include "knperc/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace knperc {

std::uint64_t BoxRegion::volume() const {
  std::uint64_t v = 1;
  for (int i = 0; i < d; ++i) v *= static_cast<std::uint64_t>(2 * n + 1);
  return v;
}

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

// Flat per-box storage for choices and the visited flag. Falls back to hashing
// when the box is too large for a dense array.
class BoxState {
 public:
  BoxState(ChoiceField& field, const BoxRegion& box) : field_(field), box_(box), side_(2 * box.n + 1) {
    if (box.volume() <= (1ULL << 26)) {
      dense_ = true;
      choices_.assign(box.volume(), kUnset);
      visited_.assign(box.volume(), 0);
    }
  }

  ChoiceSet choice(const Vertex& v) {
    if (!dense_) return field_.choice(v);
    std::uint32_t& slot = choices_[index(v)];
    if (slot == kUnset) slot = field_.compute(v).bits();
    return ChoiceSet(slot);
  }

  // Returns true when v was not visited before.
  bool visit(const Vertex& v) {
    if (!dense_) return seen_.insert(v).second;
    auto& flag = visited_[index(v)];
    if (flag) return false;
    flag = 1;
    return true;
  }

 private:
  std::size_t index(const Vertex& v) const {
    std::size_t idx = 0;
    for (int i = v.dim() - 1; i >= 0; --i) idx = idx * side_ + static_cast<std::size_t>(v[i] + box_.n);
    return idx;
  }

  ChoiceField& field_;
  BoxRegion box_;
  std::size_t side_;
  bool dense_ = false;
  std::vector<std::uint32_t> choices_;
  std::vector<std::uint8_t> visited_;
  std::unordered_set<Vertex, VertexHash> seen_;
};

void check_mode(Variant variant, ExploreMode mode) {
  if (mode == ExploreMode::In)
    throw std::invalid_argument("in-component exploration is only offered on the torus");
  if (variant == Variant::DnG && mode != ExploreMode::Out)
    throw std::invalid_argument("DnG exploration requires mode=out");
  if (variant != Variant::DnG && mode != ExploreMode::Undirected)
    throw std::invalid_argument("undirected variants require mode=undirected");
}

}  // namespace

ExploreMode default_mode(Variant variant) {
  return variant == Variant::DnG ? ExploreMode::Out : ExploreMode::Undirected;
}

ClusterResult explore(const ModelSpec& spec, std::uint64_t trial_seed, const BoxRegion& box,
                      ExploreMode mode, const ExploreOptions& options) {
  spec.validate();
  ChoiceField field(spec, trial_seed);
  return explore(field, spec.variant, box, mode, options);
}

ClusterResult explore(ChoiceField& field, Variant variant, const BoxRegion& box, ExploreMode mode,
                      const ExploreOptions& options) {
  check_mode(variant, mode);
  if (box.n < 1) throw std::invalid_argument("box half-side must be >= 1");
  if (box.d != field.d()) throw std::invalid_argument("box dimension differs from field dimension");

  BoxState state(field, box);
  ClusterResult result;
  const int ndir = 2 * field.d();
  std::vector<Vertex> queue;
  const Vertex origin = Vertex::origin(field.d());
  state.visit(origin);
  queue.push_back(origin);
  result.visited_count = 1;

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    const ChoiceSet here = state.choice(v);
    for (int di = 0; di < ndir; ++di) {
      const Direction dir = Direction::from_index(di);
      const Vertex w = v.step(dir);
      if (!box.contains(w)) continue;
      const bool forward = here.contains(dir);
      bool open = forward;
      if (variant != Variant::DnG) open = edge_rule(variant, forward, state.choice(w).contains(-dir));
      if (!open || !state.visit(w)) continue;
      ++result.visited_count;
      queue.push_back(w);
      if (box.on_boundary(w)) {
        result.reached_boundary = true;
        if (options.stop == StopRule::AtBoundary) {
          if (options.keep_sample) result.visited_sample = std::move(queue);
          return result;
        }
      }
    }
  }
  result.frontier_exhausted = true;
  if (options.keep_sample) result.visited_sample = std::move(queue);
  return result;
}

EstimateWithCI summarize(const std::vector<double>& samples, std::uint64_t master_seed) {
  EstimateWithCI est;
  est.trials = samples.size();
  est.master_seed = master_seed;
  if (samples.empty()) return est;
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / static_cast<double>(samples.size());
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  est.point = mean;
  if (samples.size() > 1)
    est.std_error = std::sqrt(ss / static_cast<double>(samples.size() - 1) / static_cast<double>(samples.size()));
  return est;
}

EstimateWithCI estimate_boundary_reach(const ModelSpec& spec, int n, std::uint64_t trials,
                                       std::uint64_t master_seed, unsigned workers) {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const BoxRegion box{spec.d, n};
  const ExploreMode mode = default_mode(spec.variant);
  auto hits = parallel_map(trials, workers, [&](std::size_t t) -> std::uint8_t {
    return explore(spec, derive_seed(master_seed, t), box, mode).reached_boundary ? 1 : 0;
  });
  std::uint64_t count = 0;
  for (auto h : hits) count += h;
  EstimateWithCI est;
  est.trials = trials;
  est.master_seed = master_seed;
  est.point = static_cast<double>(count) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.point * (1.0 - est.point) / static_cast<double>(trials));
  return est;
}

EstimateWithCI estimate_proportion(const ModelSpec& spec, int n, std::uint64_t trials,
                                   std::uint64_t master_seed, unsigned workers) {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const BoxRegion box{spec.d, n};
  const ExploreMode mode = default_mode(spec.variant);
  const double volume = static_cast<double>(box.volume());
  ExploreOptions options;
  options.stop = StopRule::Exhaust;
  auto fractions = parallel_map(trials, workers, [&](std::size_t t) {
    return static_cast<double>(explore(spec, derive_seed(master_seed, t), box, mode, options).visited_count) /
           volume;
  });
  return summarize(fractions, master_seed);
}

bool GenerationTrace::strictly_increasing() const {
  for (std::size_t i = 1; i < max_l1.size(); ++i)
    if (max_l1[i] <= max_l1[i - 1]) return false;
  return true;
}

GenerationTrace growth_trace(const ModelSpec& spec, int generations, std::uint64_t seed) {
  spec.validate();
  if (spec.variant != Variant::DnG) throw std::invalid_argument("growth trace is defined for DnG");
  if (spec.k <= spec.d) throw std::invalid_argument("growth trace requires k >= d+1");
  if (generations < 0) throw std::invalid_argument("generations must be >= 0");

  ChoiceField field(spec, seed);
  GenerationTrace trace;
  std::unordered_set<Vertex, VertexHash> seen;
  std::vector<Vertex> current{Vertex::origin(spec.d)};
  seen.insert(current.front());
  trace.max_l1.push_back(0);
  trace.sizes.push_back(1);
  for (int g = 0; g < generations; ++g) {
    std::vector<Vertex> next;
    std::int64_t best = -1;
    for (const Vertex& v : current) {
      const ChoiceSet c = field.compute(v);
      for (int di = 0; di < 2 * spec.d; ++di) {
        if (!c.contains_index(di)) continue;
        const Vertex w = v.step(Direction::from_index(di));
        if (seen.insert(w).second) {
          next.push_back(w);
          best = std::max(best, w.l1_norm());
        }
      }
    }
    trace.max_l1.push_back(best);
    trace.sizes.push_back(next.size());
    if (next.empty()) break;
    current = std::move(next);
  }
  return trace;
}

std::uint64_t torus_component_size(ChoiceField& field, int side, ExploreMode mode) {
  if (side < 3) throw std::invalid_argument("torus side must be >= 3");
  if (mode == ExploreMode::Undirected) throw std::invalid_argument("torus exploration is directed (out or in)");
  const int d = field.d();
  std::size_t volume = 1;
  for (int i = 0; i < d; ++i) volume *= static_cast<std::size_t>(side);

  auto wrap = [side](Vertex v) {
    for (int i = 0; i < v.dim(); ++i) v[i] = ((v[i] % side) + side) % side;
    return v;
  };
  auto index = [side, d](const Vertex& v) {
    std::size_t idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * side + static_cast<std::size_t>(v[i]);
    return idx;
  };
  std::vector<std::uint32_t> choices(volume, kUnset);
  auto choice = [&](const Vertex& v) {
    auto& slot = choices[index(v)];
    if (slot == kUnset) slot = field.compute(v).bits();
    return ChoiceSet(slot);
  };

  std::vector<std::uint8_t> visited(volume, 0);
  std::vector<Vertex> queue{Vertex::origin(d)};
  visited[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (int di = 0; di < 2 * d; ++di) {
      const Direction dir = Direction::from_index(di);
      bool linked;
      Vertex w;
      if (mode == ExploreMode::Out) {
        w = wrap(v.step(dir));
        linked = choice(v).contains(dir);
      } else {
        // w -> v is open iff w chose the direction pointing at v.
        w = wrap(v.step(-dir));
        linked = choice(w).contains(dir);
      }
      if (!linked) continue;
      auto& flag = visited[index(w)];
      if (flag) continue;
      flag = 1;
      queue.push_back(w);
    }
  }
  return queue.size();
}

MassTransportResult mass_transport_check(const ModelSpec& spec, int side, std::uint64_t trials,
                                         std::uint64_t master_seed, unsigned workers) {
  spec.validate();
  if (spec.variant != Variant::DnG) throw std::invalid_argument("mass transport check requires DnG");
  if (side < 3) throw std::invalid_argument("torus side L must be >= 3");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  const std::uint64_t out_master = derive_seed(master_seed, 0);
  const std::uint64_t in_master = derive_seed(master_seed, 1);
  auto sizes = [&](std::uint64_t stream_master, ExploreMode mode) {
    return parallel_map(trials, workers, [&](std::size_t t) {
      ChoiceField field(spec, derive_seed(stream_master, t));
      return static_cast<double>(torus_component_size(field, side, mode));
    });
  };
  MassTransportResult result;
  result.side = side;
  result.out = summarize(sizes(out_master, ExploreMode::Out), master_seed);
  result.in = summarize(sizes(in_master, ExploreMode::In), master_seed);
  return result;
}

}  // namespace knperc
