#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace voa {

// One engine per simulation round, derived from (seed, round) so rounds form
// independent streams and any round can be reproduced in isolation.
inline std::mt19937_64 rng_for_round(std::uint64_t seed, std::uint64_t round) {
  std::seed_seq sequence{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(round), static_cast<std::uint32_t>(round >> 32)};
  return std::mt19937_64(sequence);
}

// 53-bit uniform in [0, 1).
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection. std::uniform_int_distribution is
// implementation-defined, which would break seed reproducibility across
// standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t value = gen();
  while (value >= limit) value = gen();
  return value % n;
}

inline double exponential_draw(std::mt19937_64& gen, double rate) {
  return -std::log1p(-uniform01(gen)) / rate;
}

// Poisson via Knuth's product method, chunked so exp(-mean) never underflows.
inline std::int64_t poisson_draw(std::mt19937_64& gen, double mean) {
  std::int64_t total = 0;
  while (mean > 0.0) {
    const double chunk = std::min(mean, 500.0);
    const double limit = std::exp(-chunk);
    std::int64_t count = -1;
    double product = 1.0;
    do {
      product *= uniform01(gen);
      ++count;
    } while (product > limit);
    total += count;
    mean -= chunk;
  }
  return total;
}

}  // namespace voa
