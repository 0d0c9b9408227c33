#pragma once

#include <cstdint>
#include <random>

namespace v2im {

// Seeded stream with the same output on every standard library.
class rng {
public:
  explicit rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // +1 or -1 with equal probability.
  int spin() { return (engine_() >> 63) ? 1 : -1; }

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < limit);
    return x % bound;
  }

private:
  std::mt19937_64 engine_;
};

// Seed for trial t of an experiment seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return seed ^ trial; }

}  // namespace v2im
