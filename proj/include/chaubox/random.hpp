#pragma once

// Reproducible random streams. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; every transform to a non-uniform variate
// is written out here because the std:: distributions are not portable.

#include <cmath>
#include <cstdint>
#include <random>

#include "chaubox/special.hpp"

namespace chaubox {

/// SplitMix64 finalizer (Steele, Lea and Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent sub-stream, a function of (seed, index) only.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by inversion.
  double normal() { return special::normal_quantile(uniform()); }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, scale) by Marsaglia and Tsang's squeeze method; shapes below
  /// one use the Gamma(shape + 1) * U^(1/shape) boost.
  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0, 1.0);
      return scale * g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
  }

  double chi_square(double dof) { return gamma(dof / 2.0, 2.0); }

  double student_t(double dof) {
    const double z = normal();
    return z / std::sqrt(chi_square(dof) / dof);
  }

  double beta(double a, double b) {
    const double x = gamma(a, 1.0);
    const double y = gamma(b, 1.0);
    return x / (x + y);
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  double log_normal(double meanlog, double sdlog) { return std::exp(normal(meanlog, sdlog)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace chaubox
