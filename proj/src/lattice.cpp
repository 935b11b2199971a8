#include "knperc/lattice.hpp"

#include "knperc/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace knperc {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::DnG: return "DnG";
    case Variant::UnG: return "UnG";
    case Variant::BnG: return "BnG";
    case Variant::XnG: return "XnG";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "dng" || s == "d") return Variant::DnG;
  if (s == "ung" || s == "u") return Variant::UnG;
  if (s == "bng" || s == "b") return Variant::BnG;
  if (s == "xng" || s == "x") return Variant::XnG;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "'");
}

void ModelSpec::validate() const {
  if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
  if (k < 1 || k > 2 * d)
    throw std::invalid_argument("k must satisfy 1 <= k <= 2d (got k=" + std::to_string(k) +
                                ", d=" + std::to_string(d) + ")");
}

Vertex::Vertex(std::initializer_list<std::int32_t> coords) : dim_(static_cast<int>(coords.size())) {
  if (dim_ > kMaxDim) throw std::invalid_argument("vertex dimension exceeds kMaxDim");
  std::copy(coords.begin(), coords.end(), c_.begin());
}

std::int64_t Vertex::l1_norm() const {
  std::int64_t s = 0;
  for (int i = 0; i < dim_; ++i) s += std::abs(static_cast<std::int64_t>(c_[i]));
  return s;
}

std::int32_t Vertex::max_norm() const {
  std::int32_t m = 0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

std::size_t VertexHash::operator()(const Vertex& v) const noexcept {
  return static_cast<std::size_t>(hash_coords(0, v.coords()));
}

std::vector<Direction> all_directions(int d) {
  std::vector<Direction> dirs;
  dirs.reserve(2 * d);
  for (int i = 0; i < 2 * d; ++i) dirs.push_back(Direction::from_index(i));
  return dirs;
}

ChoiceField::ChoiceField(int d, int k, std::uint64_t seed) : d_(d), k_(k), seed_(seed) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("ChoiceField dimension out of range");
  if (k < 0 || k > 2 * d) throw std::invalid_argument("ChoiceField k out of range");
}

ChoiceSet ChoiceField::compute(const Vertex& v) const {
  std::array<std::uint8_t, 2 * kMaxDim> perm{};
  const int n = 2 * d_;
  for (int i = 0; i < n; ++i) perm[i] = static_cast<std::uint8_t>(i);
  CounterStream stream(hash_coords(seed_, v.coords()));
  std::uint32_t bits = 0;
  for (int i = 0; i < k_; ++i) {
    const int j = i + static_cast<int>(stream.below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[i], perm[j]);
    bits |= 1u << perm[i];
  }
  return ChoiceSet(bits);
}

ChoiceSet ChoiceField::choice(const Vertex& v) {
  auto it = cache_.find(v);
  if (it != cache_.end()) return it->second;
  const ChoiceSet c = compute(v);
  cache_.emplace(v, c);
  return c;
}

ChoiceSet sample_choice(ChoiceField& field, const Vertex& v) { return field.choice(v); }

bool edge_open(Variant variant, ChoiceField& field, const Vertex& u, Direction dir) {
  const bool forward = field.chooses(u, dir);
  if (variant == Variant::DnG) return forward;
  const bool backward = field.chooses(u.step(dir), -dir);
  return edge_rule(variant, forward, backward);
}

namespace {

struct LocalProbs {
  Rational a;   // a fixed neighbor is among the chosen
  Rational q2;  // two fixed neighbors are both chosen
};

LocalProbs local_probs(const ModelSpec& spec) {
  const int n = 2 * spec.d;
  const int k = spec.k;
  return {Rational(BigInt(k), BigInt(n)), Rational(BigInt(k) * (k - 1), BigInt(n) * (n - 1))};
}

}  // namespace

Rational edge_open_probability(const ModelSpec& spec) {
  spec.validate();
  const Rational a = local_probs(spec).a;
  switch (spec.variant) {
    case Variant::DnG: return a;
    case Variant::UnG: return 1 - (1 - a) * (1 - a);
    case Variant::BnG: return a * a;
    case Variant::XnG: return 2 * a * (1 - a);
  }
  return 0;
}

PairProbability pair_probability(const ModelSpec& spec, PairRelation relation) {
  spec.validate();
  const auto [a, q2] = local_probs(spec);
  const Rational marginal = edge_open_probability(spec);
  Rational joint;
  switch (relation) {
    case PairRelation::Disjoint:
      joint = marginal * marginal;
      break;
    case PairRelation::SameSource:
      if (spec.variant != Variant::DnG)
        throw std::invalid_argument("same-source relation is defined for DnG only");
      joint = q2;
      break;
    case PairRelation::Adjacent: {
      if (spec.variant == Variant::DnG)
        throw std::invalid_argument("adjacent undirected relation is not defined for DnG");
      // Shared vertex picks both / exactly one given / neither of the two directions.
      const Rational both = q2;
      const Rational one = a - q2;
      const Rational none = 1 - 2 * a + q2;
      switch (spec.variant) {
        case Variant::UnG: joint = both + 2 * one * a + none * a * a; break;
        case Variant::BnG: joint = both * a * a; break;
        case Variant::XnG: joint = both * (1 - a) * (1 - a) + 2 * one * (1 - a) * a + none * a * a; break;
        case Variant::DnG: break;
      }
      break;
    }
  }
  const Rational conditional = marginal == 0 ? Rational(0) : joint / marginal;
  return {joint, conditional, marginal};
}

namespace {

std::vector<Rational> binomial_pmf(int trials, const Rational& p) {
  std::vector<Rational> pmf(trials + 1);
  for (int i = 0; i <= trials; ++i)
    pmf[i] = Rational(binomial(trials, i)) * pow(p, i) * pow(1 - p, trials - i);
  return pmf;
}

std::vector<Rational> convolve(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  std::vector<Rational> z(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
  return z;
}

}  // namespace

std::vector<Rational> degree_pmf(const ModelSpec& spec) {
  spec.validate();
  const int n = 2 * spec.d;
  const int k = spec.k;
  const Rational a = local_probs(spec).a;
  std::vector<Rational> pmf(n + 1);
  switch (spec.variant) {
    case Variant::DnG:
      pmf[k] = 1;
      return pmf;
    case Variant::BnG: {
      auto b = binomial_pmf(k, a);
      std::copy(b.begin(), b.end(), pmf.begin());
      return pmf;
    }
    case Variant::UnG: {
      auto b = binomial_pmf(n - k, a);
      std::copy(b.begin(), b.end(), pmf.begin() + k);
      return pmf;
    }
    case Variant::XnG: {
      // Own picks stay open unless reciprocated; unpicked edges open iff the neighbor picks back.
      auto z = convolve(binomial_pmf(k, 1 - a), binomial_pmf(n - k, a));
      std::copy(z.begin(), z.end(), pmf.begin());
      return pmf;
    }
  }
  return pmf;
}

}  // namespace knperc
