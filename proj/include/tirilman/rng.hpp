#ifndef TIRILMAN_RNG_HPP
#define TIRILMAN_RNG_HPP

// Seeded generator used by every sampler. Variates are built directly from
// the raw 64-bit mt19937_64 stream (the engine is fully specified by the
// standard); std distributions are avoided because their algorithms differ
// between standard libraries.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace tirilman {

/// splitmix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over bytes.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for trial t of a suite: independent of how trials are scheduled.
inline std::uint64_t trial_seed(std::uint64_t seed, std::string_view suite, std::uint64_t t) noexcept {
  return mix64(mix64(seed ^ fnv1a(suite)) + t);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], by rejection (no modulo bias).
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(gen_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = gen_();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1)); }

  double sign() { return (gen_() >> 63) ? -1.0 : 1.0; }

  bool chance(double prob) { return uniform() < prob; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tirilman

#endif  // TIRILMAN_RNG_HPP
