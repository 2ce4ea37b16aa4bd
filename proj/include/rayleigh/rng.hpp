#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace rayleigh {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic random source identified by (master seed, stream id).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard; all distributions are implemented here rather than taken from
/// <random>, whose algorithms vary between standard libraries. Monte Carlo
/// trial i always draws from stream i, so results do not depend on how trials
/// are scheduled across workers.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed),
        stream_(stream),
        engine_(detail::splitmix64(detail::splitmix64(seed) ^
                                   detail::splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// A fresh generator on another stream of the same master seed.
  SeededRng substream(std::uint64_t stream) const { return SeededRng(seed_, stream); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via the Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  /// Standard complex Gaussian: independent N(0, 1/2) parts, E|z|^2 = 1.
  std::complex<double> complex_normal() {
    constexpr double kHalfSqrt = 0.70710678118654752440;
    const double re = normal() * kHalfSqrt;
    const double im = normal() * kHalfSqrt;
    return {re, im};
  }

  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

  /// Gamma(shape, 1) for integer shape, as a sum of exponentials.
  double gamma_integer(int shape) {
    double sum = 0.0;
    for (int i = 0; i < shape; ++i) sum += -std::log(uniform_open());
    return sum;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rayleigh
