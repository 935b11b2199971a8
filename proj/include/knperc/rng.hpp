#pragma once

#include <cstdint>
#include <span>

namespace knperc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` under `master`. Pure function of both arguments.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0xD1B54A32D192ED03ULL));
}

/// Hash of an integer coordinate tuple under a seed.
std::uint64_t hash_coords(std::uint64_t seed, std::span<const std::int32_t> coords) noexcept;

/// Counter-based stream: the i-th draw is a pure function of (key, i).
class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next() noexcept {
    ++counter_;
    return mix64(key_ ^ mix64(counter_));
  }

  /// Exactly uniform on [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace knperc
