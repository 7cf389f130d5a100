#pragma once

#include <cstdint>
#include <random>

namespace swarm {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. This is the published mix function used everywhere a
// stream is derived from a master seed (per-episode, per-run, per-sweep-point),
// so that derived streams never collide and every run is reproducible.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed + index));
}

inline double normal(Rng& rng, double mean, double stddev) {
  if (stddev <= 0.0) return mean;  // zero-noise configs draw nothing
  std::normal_distribution<double> dist(mean, stddev);
  return dist(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

// Uniform integer in [0, n).
inline int uniform_int(Rng& rng, int n) {
  std::uniform_int_distribution<int> dist(0, n - 1);
  return dist(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::bernoulli_distribution(p)(rng);
}

}  // namespace swarm
