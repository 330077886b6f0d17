#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cfb/population.hpp"
#include "cfb/prob_triple.hpp"

namespace cfb {

/// Default seed for every stochastic command.
inline constexpr std::uint64_t kDefaultSeed = 20230516;

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` derived from a base seed. Streams with different
/// indices are decorrelated by two rounds of splitmix64.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

inline Engine make_stream(std::uint64_t seed, std::uint64_t index) {
  return Engine(stream_seed(seed, index));
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

inline double uniform(Engine& eng, double lo, double hi) { return lo + (hi - lo) * uniform01(eng); }

/// log of a Gamma(shape, 1) variate. Shapes below 1 use the
/// Gamma(shape + 1) * U^(1/shape) boost in log space, which stays finite for
/// very small shapes where the variate itself underflows.
inline double log_gamma_variate(Engine& eng, double shape) {
  if (shape >= 1.0) {
    std::gamma_distribution<double> g(shape, 1.0);
    return std::log(g(eng));
  }
  std::gamma_distribution<double> g(shape + 1.0, 1.0);
  double u;
  do {
    u = uniform01(eng);
  } while (u == 0.0);
  return std::log(g(eng)) + std::log(u) / shape;
}

inline double sample_beta(Engine& eng, double alpha, double beta) {
  const double la = log_gamma_variate(eng, alpha);
  const double lb = log_gamma_variate(eng, beta);
  return logistic(la - lb);
}

/// Draws B from a benefit triple.
inline int sample_benefit(Engine& eng, const ProbTriple& t) {
  const double u = uniform01(eng);
  if (u < t.minus()) return -1;
  if (u < t.minus() + t.zero()) return 0;
  return 1;
}

}  // namespace cfb
