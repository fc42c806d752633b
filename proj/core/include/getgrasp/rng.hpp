#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace getgrasp {

// Deterministic random stream. The engine (mt19937_64) and every
// transformation below are fully specified, so identical seeds reproduce
// identical sequences on any platform; std::<distribution> classes are
// implementation-defined and are deliberately not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  // Independent substream for (seed, tag, index). Used to give each grasp
  // candidate its own stream so results do not depend on evaluation order.
  static Rng stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    std::uint64_t s = seed;
    s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    s = splitmix64(s ^ (0xbf58476d1ce4e5b9ULL * (index + 1)));
    return Rng(s);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Box-Muller (no caching: exactly two uniforms per draw).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny vs 2^64, bias < 2^-50.
    return eng_() % n;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace getgrasp
