#pragma once

#include <cstdint>

namespace nalin {

/// SplitMix64 sequence. Used both as a plain generator and, through
/// `stream`, as a counter-based source keyed by (seed, index) so that
/// sampled results do not depend on evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for the `index`-th unit of work under `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng mixer(seed ^ 0x6a09e667f3bcc909ULL);
    std::uint64_t a = mixer.next();
    Rng keyed(a ^ (index * 0xbb67ae8584caa73bULL));
    return Rng(keyed.next());
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). Rejection keeps it exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace nalin
