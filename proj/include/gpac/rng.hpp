#ifndef GPAC_RNG_HPP
#define GPAC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Hand-rolled draws on top of mt19937_64. <random> distributions are
// implementation-defined, so seeded runs would not reproduce across
// standard libraries; these do.

namespace gpac::rng {

inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound) {
  // rejection sampling, unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % bound;
}

inline double normal(std::mt19937_64& g) {
  // Box-Muller; u1 shifted into (0, 1] so the log stays finite
  double u1 = 1.0 - uniform01(g);
  double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& g) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(g, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace gpac::rng

#endif  // GPAC_RNG_HPP
