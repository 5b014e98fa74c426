// Seeded generators for states, Kraus pairs and test instances.
//
// Distributions are built directly on mt19937_64 bits so sequences are
// identical across standard library implementations.
#pragma once

#include <cstdint>
#include <random>

#include "roofkit/channels.hpp"

namespace roofkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; no cached second value.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  cplx complex_normal() { return {normal(), normal()}; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline Vec2 random_unit_vector(Rng& rng) {
  Vec2 v{rng.complex_normal(), rng.complex_normal()};
  return normalized(v);
}

inline DensityOperator random_pure_state(Rng& rng) { return DensityOperator::pure(random_unit_vector(rng)); }

/// Uniform in the Bloch ball.
inline BlochVector random_bloch(Rng& rng, double max_radius = 1.0) {
  for (;;) {
    BlochVector b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double n = b.norm();
    if (n <= 1.0 && n > 0.0) return {b.x1 * max_radius, b.x2 * max_radius, b.x3 * max_radius};
  }
}

/// Mixed state with Bloch radius at most `max_radius`.
inline DensityOperator random_mixed_state(Rng& rng, double max_radius = 0.95) {
  return density_from_bloch(random_bloch(rng, max_radius));
}

inline Mat2 random_matrix(Rng& rng) {
  return {{rng.complex_normal(), rng.complex_normal(), rng.complex_normal(), rng.complex_normal()}};
}

/// Unconstrained pair: generally neither trace preserving nor normalized.
inline KrausPair random_kraus_pair(Rng& rng) { return {random_matrix(rng), random_matrix(rng)}; }

/// A and B stacked form a random 4x2 isometry, so A^+A + B^+B = 1.
inline KrausPair random_channel(Rng& rng) {
  std::array<cplx, 4> c0{}, c1{};
  for (auto& z : c0) z = rng.complex_normal();
  for (auto& z : c1) z = rng.complex_normal();
  auto dot = [](const std::array<cplx, 4>& x, const std::array<cplx, 4>& y) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(x[i]) * y[i];
    return s;
  };
  const double n0 = std::sqrt(dot(c0, c0).real());
  for (auto& z : c0) z /= n0;
  const cplx p = dot(c0, c1);
  for (int i = 0; i < 4; ++i) c1[i] -= p * c0[i];
  const double n1 = std::sqrt(dot(c1, c1).real());
  for (auto& z : c1) z /= n1;
  return {Mat2{{c0[0], c1[0], c0[1], c1[1]}}, Mat2{{c0[2], c1[2], c0[3], c1[3]}}};
}

/// Random invertible 2x2 matrix (|det| bounded away from zero).
inline Mat2 random_invertible(Rng& rng, double min_abs_det = 0.1) {
  for (;;) {
    Mat2 m = random_matrix(rng);
    if (std::abs(m.det()) >= min_abs_det) return m;
  }
}

inline Mat2 random_unitary(Rng& rng) {
  const Vec2 c0 = random_unit_vector(rng);
  const double phi = rng.uniform(0, 2 * std::numbers::pi);
  const cplx e = std::polar(1.0, phi);
  return {{c0[0], -e * std::conj(c0[1]), c0[1], e * std::conj(c0[0])}};
}

}  // namespace roofkit
