// Exact 2x2 complex linear algebra, Bloch geometry and the binary entropy
// family used throughout roofkit.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace roofkit {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;

namespace tol {
/// Structural validation of states, Kraus pairs and ensembles.
inline constexpr double structural = 1e-12;
/// Oracle-vs-closed-form comparisons.
inline constexpr double oracle = 1e-4;
/// Closed-form cross-checks between algebraic routes.
inline constexpr double closed_form = 1e-10;
/// Radicand of eig2 below which the spectrum is reported degenerate.
inline constexpr double degenerate_discriminant = 1e-30;
}  // namespace tol

/// Precondition violations (bad parameters, wrong channel kind, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix or vector that does not describe a valid quantum state.
class invalid_state : public domain_error {
 public:
  using domain_error::domain_error;
};

enum class entropy_unit { nats, bits };

inline double to_unit(double nats, entropy_unit unit) {
  return unit == entropy_unit::bits ? nats / std::numbers::ln2 : nats;
}

/// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> m{};

  constexpr cplx& operator()(int r, int c) { return m[2 * r + c]; }
  constexpr const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
  static constexpr Mat2 diag(cplx d0, cplx d1) { return {{d0, 0.0, 0.0, d1}}; }
  static constexpr Mat2 antidiag(cplx m01, cplx m10) { return {{0.0, m01, m10, 0.0}}; }

  /// Pauli matrices, k in {1, 2, 3}; k = 0 gives the identity.
  static constexpr Mat2 pauli(int k) {
    switch (k) {
      case 1: return {{0.0, 1.0, 1.0, 0.0}};
      case 2: return {{0.0, cplx(0, -1), cplx(0, 1), 0.0}};
      case 3: return {{1.0, 0.0, 0.0, -1.0}};
      default: return identity();
    }
  }

  cplx trace() const { return m[0] + m[3]; }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }

  Mat2 adjoint() const { return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}}; }
  Mat2 conj() const { return {{std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])}}; }
  Mat2 transpose() const { return {{m[0], m[2], m[1], m[3]}}; }

  bool finite() const {
    return std::all_of(m.begin(), m.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  }

  /// Largest absolute entry.
  double max_abs() const {
    double r = 0.0;
    for (const auto& z : m) r = std::max(r, std::abs(z));
    return r;
  }

  Mat2& operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat2& operator*=(cplx s) {
    for (auto& z : m) z *= s;
    return *this;
  }

  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
  friend Mat2 operator*(Mat2 a, cplx s) { return a *= s; }
  friend Mat2 operator*(cplx s, Mat2 a) { return a *= s; }
  friend Mat2 operator-(Mat2 a) { return a *= -1.0; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
  }

  friend Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {a.m[0] * v[0] + a.m[1] * v[1], a.m[2] * v[0] + a.m[3] * v[1]};
  }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Largest absolute entry of a - b.
inline double max_abs_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

inline Vec2 conj(const Vec2& v) { return {std::conj(v[0]), std::conj(v[1])}; }
inline double norm(const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }
inline cplx inner(const Vec2& a, const Vec2& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

inline Vec2 normalized(const Vec2& v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw domain_error("cannot normalize the zero vector");
  return {v[0] / n, v[1] / n};
}

/// |a><b|
inline Mat2 outer(const Vec2& a, const Vec2& b) {
  return {{a[0] * std::conj(b[0]), a[0] * std::conj(b[1]), a[1] * std::conj(b[0]), a[1] * std::conj(b[1])}};
}

inline bool is_hermitian(const Mat2& m, double tolerance) {
  return std::abs(m(0, 0).imag()) <= tolerance && std::abs(m(1, 1).imag()) <= tolerance &&
         std::abs(m(0, 1) - std::conj(m(1, 0))) <= tolerance;
}

struct BlochVector {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  double norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
  std::array<double, 3> array() const { return {x1, x2, x3}; }
  static BlochVector from(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Eigenvalues of a Hermitian 2x2 matrix, descending.
struct Spectrum2 {
  double lambda_hi = 0.0;
  double lambda_lo = 0.0;
};

/// Closed-form spectrum lambda = tr/2 +- sqrt(tr^2/4 - det).
inline Spectrum2 eig2(const Mat2& m) {
  if (!is_hermitian(m, 1e-10)) throw domain_error("eig2: matrix is not Hermitian");
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_tr = 0.5 * (a + d);
  // tr^2/4 - det written without cancellation: ((a-d)/2)^2 + |m01|^2
  const double half_gap = 0.5 * (a - d);
  const double disc = half_gap * half_gap + std::norm(m(0, 1));
  if (disc <= tol::degenerate_discriminant) return {half_tr, half_tr};
  const double r = std::sqrt(disc);
  return {half_tr + r, half_tr - r};
}

/// Spectrum together with orthonormal eigenvectors (columns of `vectors`).
struct Eigensystem2 {
  Spectrum2 values;
  Vec2 hi;
  Vec2 lo;
};

inline Eigensystem2 eigh2(const Mat2& m) {
  const Spectrum2 s = eig2(m);
  if (s.lambda_hi == s.lambda_lo) return {s, {1.0, 0.0}, {0.0, 1.0}};
  // (m - lambda_lo) has rank one; its larger column spans the hi eigenspace.
  const Mat2 shifted = m - Mat2::identity() * s.lambda_lo;
  Vec2 c0{shifted(0, 0), shifted(1, 0)};
  Vec2 c1{shifted(0, 1), shifted(1, 1)};
  Vec2 hi = normalized(norm(c0) >= norm(c1) ? c0 : c1);
  Vec2 lo{-std::conj(hi[1]), std::conj(hi[0])};
  return {s, hi, lo};
}

/// Unit-trace positive semi-definite Hermitian 2x2 matrix.
class DensityOperator {
 public:
  /// Validates Hermiticity, unit trace and positivity at the structural tolerance.
  static DensityOperator from_matrix(const Mat2& m, double tolerance = tol::structural) {
    if (!m.finite()) throw invalid_state("density operator has non-finite entries");
    if (!is_hermitian(m, tolerance)) throw invalid_state("density operator is not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > tolerance) throw invalid_state("density operator trace differs from 1");
    if (m.det().real() < -tolerance || m(0, 0).real() < -tolerance || m(1, 1).real() < -tolerance)
      throw invalid_state("density operator is not positive semi-definite");
    Mat2 h = m;
    h(0, 0) = m(0, 0).real();
    h(1, 1) = m(1, 1).real();
    h(1, 0) = std::conj(h(0, 1));
    return DensityOperator(h);
  }

  /// |a><a| / <a|a>
  static DensityOperator pure(const Vec2& a) {
    const Vec2 u = normalized(a);
    Mat2 m = outer(u, u);
    m(0, 0) = m(0, 0).real();
    m(1, 1) = 1.0 - m(0, 0).real();
    m(1, 0) = std::conj(m(0, 1));
    return DensityOperator(m);
  }

  static DensityOperator maximally_mixed() { return DensityOperator(Mat2::diag(0.5, 0.5)); }

  const Mat2& matrix() const { return m_; }
  double p00() const { return m_(0, 0).real(); }
  double p11() const { return m_(1, 1).real(); }
  cplx p01() const { return m_(0, 1); }
  double det() const { return m_.det().real(); }

  BlochVector bloch() const { return {2.0 * m_(0, 1).real(), -2.0 * m_(0, 1).imag(), p00() - p11()}; }

  bool is_pure(double tolerance = 1e-10) const { return det() <= tolerance; }

  /// Unit vector spanning the range of a pure state (phase fixed by a real first nonzero entry).
  Vec2 ket() const {
    const Eigensystem2 e = eigh2(m_);
    Vec2 v = e.hi;
    const cplx ref = std::abs(v[0]) > 1e-300 ? v[0] : v[1];
    const cplx phase = std::conj(ref) / std::abs(ref);
    return {v[0] * phase, v[1] * phase};
  }

  friend bool operator==(const DensityOperator&, const DensityOperator&) = default;

 private:
  explicit DensityOperator(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

/// rho = (1 + x1 s1 + x2 s2 + x3 s3) / 2
inline DensityOperator density_from_bloch(const BlochVector& b) {
  if (!(std::isfinite(b.x1) && std::isfinite(b.x2) && std::isfinite(b.x3)))
    throw invalid_state("Bloch vector has non-finite coordinates");
  if (b.norm() > 1.0 + tol::structural) throw invalid_state("Bloch vector lies outside the unit ball");
  Mat2 m{{0.5 * (1.0 + b.x3), cplx(0.5 * b.x1, -0.5 * b.x2), cplx(0.5 * b.x1, 0.5 * b.x2), 0.5 * (1.0 - b.x3)}};
  return DensityOperator::from_matrix(m, 2 * tol::structural);
}

inline BlochVector bloch_from_density(const DensityOperator& rho) { return rho.bloch(); }

/// Pauli coordinates (x0, x1, x2, x3) of any 2x2 matrix, X = (x0 + sum x_k s_k) / 2.
inline std::array<cplx, 4> pauli_coordinates(const Mat2& x) {
  return {x(0, 0) + x(1, 1), x(0, 1) + x(1, 0), cplx(0, 1) * (x(0, 1) - x(1, 0)), x(0, 0) - x(1, 1)};
}

namespace detail {
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

inline double clamp_unit(double x, const char* who) {
  if (!(x >= -tol::structural && x <= 1.0 + tol::structural))
    throw domain_error(std::string(who) + ": argument outside [0, 1]");
  return std::clamp(x, 0.0, 1.0);
}
}  // namespace detail

/// S(rho) = -sum lambda ln lambda
inline double von_neumann_entropy(const DensityOperator& rho, entropy_unit unit = entropy_unit::nats) {
  const Spectrum2 s = eig2(rho.matrix());
  const double hi = std::clamp(s.lambda_hi, 0.0, 1.0);
  const double lo = std::clamp(s.lambda_lo, 0.0, 1.0);
  return to_unit(0.0 - detail::xlogx(hi) - detail::xlogx(lo), unit);
}

/// h(x) = -x ln x - (1-x) ln(1-x)
inline double h(double x) {
  x = detail::clamp_unit(x, "h");
  const double lo = std::min(x, 1.0 - x);
  return lo > 0.0 ? 0.0 - lo * std::log(lo) - (1.0 - lo) * std::log1p(-lo) : 0.0;
}

/// h1(x) = h((1+x)/2)
inline double h1(double x) {
  x = detail::clamp_unit(x, "h1");
  return h(0.5 * (1.0 + x));
}

/// h2(x) = h1(sqrt(1-x^2)); the entropy carried by a concurrence value x.
inline double h2(double x) {
  x = detail::clamp_unit(x, "h2");
  // (1 - sqrt(1-x^2))/2 computed as x^2 / (2 (1 + sqrt(1-x^2))) to keep digits for small x.
  const double y = std::sqrt((1.0 - x) * (1.0 + x));
  const double lo = 0.5 * x * x / (1.0 + y);
  return h(lo);
}

}  // namespace roofkit
