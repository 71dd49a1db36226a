#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded, splittable random streams. Substream k of a master seed is fully
// determined by (seed, k), so batched Monte Carlo produces identical output
// at any thread count. All variate transforms are hand-rolled: the standard
// library distribution objects are implementation-defined and would break
// bit-exact reproducibility guarantees across toolchains.

namespace levycalc::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t substream = 0) {
    std::uint64_t s = seed ^ (0xA3EC647659359ACDull * (substream + 1));
    const std::uint64_t a = splitmix64(s);
    const std::uint64_t b = splitmix64(s);
    engine_.seed(a ^ (b << 1));
  }

  // Uniform in (0,1); never returns 0 or 1.
  double u01() {
    for (;;) {
      const double u = (engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // Standard normal via Box-Muller (two uniforms per variate).
  double normal() {
    const double u1 = u01();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925287 * u2);
  }

  // Standard gamma, Marsaglia-Tsang squeeze for shape >= 1 and the
  // power-of-uniform boost below 1. Valid for any shape > 0.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      const double u = u01();
      return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = u01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Poisson count by uniform products; intended for small means.
  long poisson(double mean) {
    const double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= u01();
    } while (p > limit);
    return k - 1;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace levycalc::rng
