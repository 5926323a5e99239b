#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "ordkin/types.hpp"

namespace ordkin {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The output is a pure function of (key, stream, counter), so independent
/// substreams can be derived from one seed without sharing state. That is
/// what lets the particle solvers hand each collision pair its own stream and
/// still produce results that do not depend on the worker count.
class Philox {
 public:
  using result_type = std::uint64_t;

  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) : key_{lo(seed), hi(seed)} {
    counter_[2] = lo(stream);
    counter_[3] = hi(stream);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (cursor_ == 2) refill();
    return buffer_[cursor_++];
  }

  /// Substream for a (a, b) coordinate, e.g. (step, pair index).
  static Philox substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return Philox(seed, mix(mix(a) ^ (b + 0x9e3779b97f4a7c15ULL)));
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static constexpr std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  void refill() {
    std::array<std::uint32_t, 4> x = counter_;
    std::array<std::uint32_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * x[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * x[2];
      x = {hi(p1) ^ x[1] ^ k[0], lo(p1), hi(p0) ^ x[3] ^ k[1], lo(p0)};
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    buffer_[0] = (std::uint64_t{x[1]} << 32) | x[0];
    buffer_[1] = (std::uint64_t{x[3]} << 32) | x[2];
    cursor_ = 0;
    if (++counter_[0] == 0) ++counter_[1];
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_{0, 0, 0, 0};
  std::array<std::uint64_t, 2> buffer_{0, 0};
  int cursor_ = 2;
};

/// Uniform double in [0, 1).
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
double uniform(Rng& rng, double a, double b) {
  return a + (b - a) * uniform01(rng);
}

/// Standard normal deviate (Marsaglia polar method).
template <class Rng>
double standard_normal(Rng& rng) {
  double u, v, s;
  do {
    u = 2.0 * uniform01(rng) - 1.0;
    v = 2.0 * uniform01(rng) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

/// Uniform direction on S^{d-1}, d in {2, 3}, embedded in R^3.
template <class Rng>
Vec3 random_unit(Rng& rng, int d) {
  if (d == 2) {
    const double a = uniform(rng, 0.0, kTwoPi);
    return {std::cos(a), std::sin(a), 0.0};
  }
  const double z = uniform(rng, -1.0, 1.0);
  const double a = uniform(rng, 0.0, kTwoPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(a), r * std::sin(a), z};
}

}  // namespace ordkin
