#pragma once

// Z^d geometry, the per-vertex k-neighbor choice field and the four edge rules.

#include "knperc/rational.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace knperc {

/// Largest dimension a Vertex can carry. Pure formulas accept any d.
inline constexpr int kMaxDim = 8;

enum class Variant { DnG, UnG, BnG, XnG };

std::string_view to_string(Variant v);
/// Accepts "dng", "DnG", "D", ... Throws std::invalid_argument.
Variant parse_variant(std::string_view text);

struct ModelSpec {
  int d = 2;
  int k = 2;
  Variant variant = Variant::DnG;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument unless d >= 1 and 1 <= k <= 2d.
  void validate() const;
  int directions() const { return 2 * d; }
};

/// Unit vector +-e_axis. Index layout: 2*axis for +, 2*axis+1 for -.
struct Direction {
  int axis = 0;
  int sign = 1;

  static constexpr Direction from_index(int index) { return {index / 2, (index % 2) ? -1 : 1}; }
  constexpr int index() const { return 2 * axis + (sign < 0 ? 1 : 0); }
  constexpr Direction operator-() const { return {axis, -sign}; }
  friend constexpr bool operator==(Direction, Direction) = default;
};

class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(int dim) : dim_(dim) {}
  Vertex(std::initializer_list<std::int32_t> coords);

  static Vertex origin(int dim) { return Vertex(dim); }

  int dim() const { return dim_; }
  std::int32_t operator[](int i) const { return c_[i]; }
  std::int32_t& operator[](int i) { return c_[i]; }
  std::span<const std::int32_t> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  Vertex step(Direction dir) const {
    Vertex v = *this;
    v.c_[dir.axis] += dir.sign;
    return v;
  }

  std::int64_t l1_norm() const;
  std::int32_t max_norm() const;

  friend bool operator==(const Vertex& a, const Vertex& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

 private:
  int dim_ = 0;
  std::array<std::int32_t, kMaxDim> c_{};
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

/// A k-subset of the 2d directions, stored as a bitmask over direction indices.
class ChoiceSet {
 public:
  ChoiceSet() = default;
  explicit ChoiceSet(std::uint32_t bits) : bits_(bits) {}

  bool contains(Direction dir) const { return (bits_ >> dir.index()) & 1u; }
  bool contains_index(int index) const { return (bits_ >> index) & 1u; }
  int size() const { return std::popcount(bits_); }
  std::uint32_t bits() const { return bits_; }
  void insert(Direction dir) { bits_ |= 1u << dir.index(); }

  friend bool operator==(ChoiceSet, ChoiceSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Direction indices in ascending order (axis, then + before -).
std::vector<Direction> all_directions(int d);

/// Lazy deterministic configuration: vertex -> uniform k-subset of directions.
///
/// The subset at v is the first k entries of a forward Fisher-Yates shuffle of
/// the 2d directions driven by a counter stream keyed on hash(seed, v). Fields
/// with the same (d, seed) and k < k' are therefore nested vertex by vertex.
class ChoiceField {
 public:
  ChoiceField(int d, int k, std::uint64_t seed);
  ChoiceField(const ModelSpec& spec, std::uint64_t seed) : ChoiceField(spec.d, spec.k, seed) {}

  int d() const { return d_; }
  int k() const { return k_; }
  std::uint64_t seed() const { return seed_; }

  ChoiceSet choice(const Vertex& v);
  bool chooses(const Vertex& v, Direction dir) { return choice(v).contains(dir); }
  std::size_t cached() const { return cache_.size(); }

  /// Uncached evaluation; identical to choice(v).
  ChoiceSet compute(const Vertex& v) const;

 private:
  int d_;
  int k_;
  std::uint64_t seed_;
  std::unordered_map<Vertex, ChoiceSet, VertexHash> cache_;
};

ChoiceSet sample_choice(ChoiceField& field, const Vertex& v);

/// Edge rule. DnG: the directed edge (u, u+dir). Others: the undirected edge {u, u+dir}.
bool edge_open(Variant variant, ChoiceField& field, const Vertex& u, Direction dir);

/// Edge rule on the two local choice bits: u picks dir, (u+dir) picks -dir.
constexpr bool edge_rule(Variant variant, bool forward, bool backward) {
  switch (variant) {
    case Variant::DnG: return forward;
    case Variant::UnG: return forward || backward;
    case Variant::BnG: return forward && backward;
    case Variant::XnG: return forward != backward;
  }
  return false;
}

/// Exact probability that a single (directed for DnG) edge is open.
Rational edge_open_probability(const ModelSpec& spec);

enum class PairRelation {
  SameSource,  // DnG: two distinct directed edges leaving one vertex
  Adjacent,    // U/B/X: two distinct undirected edges sharing one vertex
  Disjoint,    // edges with no vertex in common
};

struct PairProbability {
  Rational joint;        // P(both open)
  Rational conditional;  // P(first open | second open)
  Rational marginal;     // P(one open)
};

/// Throws std::invalid_argument when the relation is undefined for the variant.
PairProbability pair_probability(const ModelSpec& spec, PairRelation relation);

/// Degree law on {0..2d}: DnG out-degree, undirected degree otherwise.
std::vector<Rational> degree_pmf(const ModelSpec& spec);

}  // namespace knperc
