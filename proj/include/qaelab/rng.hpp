#pragma once

#include <cstdint>

namespace qaelab {

namespace detail {
// SplitMix64 finalizer; full-avalanche bijection on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based splittable RNG. Every draw is a pure function of
// (key, counter), so streams can be split for parallel work without shared
// state: substream(id) derives an independent key, and identical (seed, id)
// pairs always produce identical sequences.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(detail::mix64(detail::mix64(seed) ^ detail::mix64(~stream))) {}

  // Independent child stream; does not advance this stream.
  CounterRng substream(std::uint64_t id) const { return CounterRng(key_, id); }

  std::uint64_t next_u64() { return detail::mix64(key_ ^ detail::mix64(++counter_)); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound >= 1. Rejection-free modulo is fine
  // here: bound is tiny (<= 3 in practice) against 2^64.
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qaelab
