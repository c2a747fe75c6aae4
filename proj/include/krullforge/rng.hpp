#pragma once

#include <cstdint>

#include "krullforge/ints.hpp"

namespace krullforge {

/// Splittable counter-based PRNG. Output i is a splitmix64 hash of
/// (key, i), so streams are reproducible across platforms and can be
/// forked with split() without perturbing the parent stream.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : key_(mix(seed + kGamma)) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  /// Derive an independent child stream; the parent is not advanced.
  SplitRng split(std::uint64_t tag) const { return SplitRng(key_ ^ mix(tag + kGamma), 0); }

  /// Uniform in [lo, hi], inclusive.
  std::int64_t next_i64(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("SplitRng::next_i64: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  std::size_t next_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("SplitRng::next_index: empty range");
    return static_cast<std::size_t>(next_u64() % n);
  }

  bool next_bool() { return (next_u64() & 1) != 0; }

  /// Uniform Int in [lo, hi], inclusive. 64 extra bits keep the modulo
  /// bias negligible at sampling scale.
  Int next_int(const Int& lo, const Int& hi) {
    if (lo > hi) throw std::invalid_argument("SplitRng::next_int: empty range");
    const Int span = hi - lo + 1;
    const std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
    const std::size_t words = bits / 64 + 2;
    Int acc = 0;
    for (std::size_t i = 0; i < words; ++i) {
      acc <<= 64;
      const std::uint64_t w = next_u64();
      Int word;
      mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
      acc += word;
    }
    return lo + acc % span;
  }

 private:
  SplitRng(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace krullforge
