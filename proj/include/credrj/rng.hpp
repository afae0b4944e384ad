#ifndef CREDRJ_RNG_HPP
#define CREDRJ_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace credrj {

/// Seeded random stream for one chain. All variate transforms are written
/// out explicitly (instead of std::*_distribution) so that a given seed
/// produces the same draw sequence on every standard library.
class ChainRng {
 public:
  explicit ChainRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1); never returns 0 or 1.
  double uniform() {
    // 53-bit mantissa draw, shifted off both endpoints.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
  }

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double variance) {
    return mean + std::sqrt(variance) * normal();
  }

  /// Gamma(shape, rate) via Marsaglia-Tsang squeeze; shape < 1 handled by
  /// the usual boost with U^{1/shape}.
  double gamma(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0)
      throw std::domain_error("ChainRng::gamma: shape and rate must be positive");
    if (shape < 1.0) {
      const double boost = std::pow(uniform(), 1.0 / shape);
      return boost * gamma(shape + 1.0, rate);
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
      const double u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v / rate;
    }
  }

  /// Index in [0, n) with probability weights[k]; weights must sum to ~1.
  template <typename Weights>
  int categorical(const Weights& weights, int n) {
    double u = uniform();
    for (int k = 0; k < n - 1; ++k) {
      u -= weights[k];
      if (u < 0.0) return k;
    }
    return n - 1;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 step; used to derive per-worker seeds from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace credrj

#endif
