// The anti-linear Hermitian operator attached to a Kraus pair.
//
// An anti-linear map is stored as a plain matrix `alpha` with the action
// v -> alpha * conj(v). Composition therefore conjugates everything standing
// to the right of an anti-linear factor:
//
//   (L1 o theta o L2) v = L1 alpha conj(L2) conj(v)
//   theta o theta      = alpha conj(alpha)            (linear)
//
// Hermiticity <a|theta|b> = <b|theta|a> is equivalent to alpha being symmetric.
#pragma once

#include <array>

#include "roofkit/channels.hpp"

namespace roofkit {

class AntilinearHermitian {
 public:
  /// Accepts alpha when alpha01 and alpha10 agree to 1e-14 relative to the
  /// largest entry; the stored matrix is exactly symmetric.
  static AntilinearHermitian from_alpha(const Mat2& alpha) {
    if (!alpha.finite()) throw domain_error("theta: non-finite entries");
    const double scale = std::max(1.0, alpha.max_abs());
    if (std::abs(alpha(0, 1) - alpha(1, 0)) > 1e-14 * scale)
      throw domain_error("theta: alpha is not symmetric, operator is not Hermitian");
    Mat2 s = alpha;
    s(0, 1) = s(1, 0) = 0.5 * (alpha(0, 1) + alpha(1, 0));
    return AntilinearHermitian(s);
  }

  static AntilinearHermitian zero() { return AntilinearHermitian(Mat2::zero()); }

  const Mat2& alpha() const { return alpha_; }

  /// theta v = alpha conj(v)
  Vec2 operator()(const Vec2& v) const { return alpha_ * conj(v); }

  /// theta^2 = alpha conj(alpha), a positive linear operator.
  Mat2 squared() const { return alpha_ * alpha_.conj(); }

  /// det sqrt(theta^2) = |det alpha|
  double det_sqrt_squared() const { return std::abs(alpha_.det()); }

  /// Matrix of the linear operator theta X theta.
  Mat2 sandwich(const Mat2& x) const { return alpha_ * x.conj() * alpha_.conj(); }

 private:
  explicit AntilinearHermitian(const Mat2& a) : alpha_(a) {}
  Mat2 alpha_;
};

/// Matrix of the spin flip (a0, a1) -> (a1*, -a0*). Anti-unitary, not Hermitian.
inline constexpr Mat2 spin_flip_alpha() { return {{0.0, 1.0, -1.0, 0.0}}; }

/// alpha conj(v) for an arbitrary anti-linear matrix.
inline Vec2 apply_antilinear(const Mat2& alpha, const Vec2& v) { return alpha * conj(v); }

/// Entries of theta_{A,B} written out from the Kraus coefficients.
inline AntilinearHermitian theta_from_kraus(const Mat2& a, const Mat2& b) {
  Mat2 alpha;
  alpha(0, 0) = 2.0 * std::conj(b(1, 0) * a(0, 0) - a(1, 0) * b(0, 0));
  alpha(1, 1) = 2.0 * std::conj(a(0, 1) * b(1, 1) - b(0, 1) * a(1, 1));
  // Grouped so that swapping A and B negates every rounding step: theta_{B,A} == -theta_{A,B} exactly.
  const cplx diag_part = a(0, 0) * b(1, 1) - b(0, 0) * a(1, 1);
  const cplx off_part = a(0, 1) * b(1, 0) - b(0, 1) * a(1, 0);
  alpha(0, 1) = alpha(1, 0) = std::conj(diag_part + off_part);
  return AntilinearHermitian::from_alpha(alpha);
}

inline AntilinearHermitian theta_from_kraus(const KrausPair& ch) { return theta_from_kraus(ch.A(), ch.B()); }

/// theta_{A,B} = A^+ theta_f B - B^+ theta_f A, composed with the anti-linear rule.
inline AntilinearHermitian theta_spinflip_form(const Mat2& a, const Mat2& b) {
  const Mat2 f = spin_flip_alpha();
  const Mat2 alpha = a.adjoint() * f * b.conj() - b.adjoint() * f * a.conj();
  return AntilinearHermitian::from_alpha(alpha);
}

/// theta of (A', B') = (mu00 A + mu01 B, mu10 A + mu11 B) is (det mu)* theta.
inline AntilinearHermitian theta_module_change(const AntilinearHermitian& theta, const Mat2& mu) {
  return AntilinearHermitian::from_alpha(theta.alpha() * std::conj(mu.det()));
}

/// The pair mixed by mu.
inline KrausPair mix_kraus(const KrausPair& ch, const Mat2& mu) {
  return {ch.A() * mu(0, 0) + ch.B() * mu(0, 1), ch.A() * mu(1, 0) + ch.B() * mu(1, 1)};
}

/// theta for (C1 A C2, C1 B C2): (det C1)* C2^+ theta C2.
inline AntilinearHermitian theta_conjugate_transform(const AntilinearHermitian& theta, const Mat2& c1, const Mat2& c2) {
  const Mat2 alpha = c2.adjoint() * theta.alpha() * c2.conj() * std::conj(c1.det());
  Mat2 sym = alpha;
  sym(0, 1) = sym(1, 0) = 0.5 * (alpha(0, 1) + alpha(1, 0));
  return AntilinearHermitian::from_alpha(sym);
}

/// <a|theta|b> = a^+ alpha conj(b)
inline cplx matrix_element(const AntilinearHermitian& theta, const Vec2& a, const Vec2& b) {
  return inner(a, theta(b));
}

inline cplx pure_expectation(const AntilinearHermitian& theta, const Vec2& a) {
  if (std::abs(norm(a) - 1.0) > 1e-10) throw domain_error("pure_expectation: vector is not normalized");
  return matrix_element(theta, a, a);
}

/// Norm of (A x B - B x A)|aa> - (1/2) <a|theta_{A,B}|a>* (|01> - |10>).
inline double antisymmetric_identity_residual(const Mat2& a, const Mat2& b, const Vec2& v) {
  if (std::abs(norm(v) - 1.0) > 1e-10) throw domain_error("antisymmetric_identity_residual: vector is not normalized");
  const Vec2 av = a * v;
  const Vec2 bv = b * v;
  std::array<cplx, 4> lhs{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) lhs[2 * i + j] = av[i] * bv[j] - bv[i] * av[j];
  const cplx c = 0.5 * std::conj(pure_expectation(theta_from_kraus(a, b), v));
  const std::array<cplx, 4> rhs{0.0, c, -c, 0.0};
  double r = 0.0;
  for (int k = 0; k < 4; ++k) r += std::norm(lhs[k] - rhs[k]);
  return std::sqrt(r);
}

}  // namespace roofkit
