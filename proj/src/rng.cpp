#include "knperc/rng.hpp"

#include "knperc/errors.hpp"

#include <cstdlib>
#include <string>

namespace knperc {

std::uint64_t hash_coords(std::uint64_t seed, std::span<const std::int32_t> coords) noexcept {
  std::uint64_t h = mix64(seed ^ (0x632BE59BD9B4E019ULL + coords.size()));
  for (std::int32_t c : coords) h = mix64(h ^ static_cast<std::uint32_t>(c));
  return h;
}

std::uint64_t CounterStream::below(std::uint64_t bound) noexcept {
  // 2^64 mod bound values at the bottom of the range are rejected.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("KNPERC_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (...) {
    }
  }
  return 50'000'000'000ULL;
}

}  // namespace knperc
