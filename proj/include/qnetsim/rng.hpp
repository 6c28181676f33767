#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qnetsim/error.hpp"

namespace qnetsim {

// Deterministic random source. Every draw goes through hand-rolled transforms
// on top of mt19937_64 so a given seed reproduces the same stream on any
// platform; std:: distributions are implementation-defined and would break
// seeded replay.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, bound), rejection-debiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) fail(errc::invalid_parameter, "Rng::below bound must be > 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % bound;
  }

  // Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) fail(errc::invalid_parameter, "Rng::uniform_int empty range");
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform real in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Normal(mu, sigma) via Box-Muller. The spare value is discarded so every
  // call consumes exactly two words, keeping replay independent of call sites.
  double normal(double mu, double sigma) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qnetsim
