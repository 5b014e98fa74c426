// Leaves of constant concurrence in the Bloch ball and the optimal
// decompositions they carry.
//
// For a length-two channel C^2 = 4 (L1^2 + L2^2) with L1, L2 affine in the
// Bloch coordinates. Level sets of (L1, L2) are lines (non-degenerate case)
// or planes (one form vanishes identically); their intersections with the
// ball are the leaves.
#pragma once

#include <Eigen/Eigenvalues>
#include <array>
#include <utility>
#include <vector>

#include "roofkit/concurrence.hpp"
#include "roofkit/roof_oracle.hpp"

namespace roofkit {

/// L(x) = c0 + c1 x1 + c2 x2 + c3 x3 on Bloch coordinates.
struct LinearForm {
  double c0 = 0.0;
  std::array<double, 3> c{};

  double operator()(const BlochVector& b) const { return c0 + c[0] * b.x1 + c[1] * b.x2 + c[2] * b.x3; }
  double operator()(const DensityOperator& rho) const { return (*this)(rho.bloch()); }
  double linear_norm() const { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]); }
  bool is_zero() const { return c0 == 0.0 && c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0; }
};

using FormPair = std::pair<LinearForm, LinearForm>;

namespace detail {

using vec3 = std::array<double, 3>;

inline double dot(const vec3& a, const vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double length(const vec3& a) { return std::sqrt(dot(a, a)); }
inline vec3 cross(const vec3& a, const vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline vec3 scaled(const vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline vec3 plus(const vec3& a, const vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline vec3 minus(const vec3& a, const vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline vec3 unit(const vec3& a) { return scaled(a, 1.0 / length(a)); }

/// Sign fixed so the first component above 1e-8 in magnitude is positive.
inline vec3 canonical_sign(vec3 d) {
  for (double v : d) {
    if (std::abs(v) > 1e-8) {
      if (v < 0) d = scaled(d, -1.0);
      break;
    }
  }
  return d;
}

/// Hermitian matrix with Pauli coordinates (x0, x1, x2, x3).
inline Mat2 from_pauli(const std::array<double, 4>& x) {
  return {{0.5 * (x[0] + x[3]), cplx(0.5 * x[1], -0.5 * x[2]), cplx(0.5 * x[1], 0.5 * x[2]), 0.5 * (x[0] - x[3])}};
}

/// C^2 extended as a quadratic form to Hermitian matrices.
inline double concurrence_quadratic(const AntilinearHermitian& theta, const Mat2& x) {
  return (x * theta.sandwich(x)).trace().real() - 2.0 * x.det().real() * theta.det_sqrt_squared();
}

}  // namespace detail

/// Symmetric 4x4 matrix M with C^2 = (1, x)^T M (1, x), recovered by
/// polarization on the Pauli basis.
inline Eigen::Matrix4d concurrence_quadratic_form(const AntilinearHermitian& theta) {
  std::array<std::array<double, 4>, 4> basis{};
  for (int i = 0; i < 4; ++i) basis[i][i] = 1.0;
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) m(i, i) = detail::concurrence_quadratic(theta, detail::from_pauli(basis[i]));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::array<double, 4> s{};
      s[i] = s[j] = 1.0;
      const double q = detail::concurrence_quadratic(theta, detail::from_pauli(s));
      m(i, j) = m(j, i) = 0.5 * (q - m(i, i) - m(j, j));
    }
  return m;
}

/// L1, L2 for a canonical-form channel, with the square-root signs chosen so
/// that their product is nonnegative.
inline FormPair foliation_forms(const ChannelSpec& spec) {
  const auto* c = std::get_if<canonical_form>(&spec);
  if (!c) throw domain_error("foliation_forms: channel is not in canonical form");
  validate(spec);
  const double k = std::abs(c->b10 * c->a00);
  const double l = std::abs(c->b01 * c->a11);
  // rho00 = (1 + x3)/2, rho11 = (1 - x3)/2, rho01 = (x1 - i x2)/2
  LinearForm l1{0.5 * (k - l), {0.0, 0.0, 0.5 * (k + l)}};
  const canonical_roots r = canonical_square_roots(*c);
  LinearForm l2{0.0, {(0.5 * cplx(0, 1) * (r.w - r.partner)).real(), (0.5 * (r.w + r.partner)).real(), 0.0}};
  return {l1, l2};
}

/// Forms for an arbitrary pair, from the eigen-decomposition of the
/// quadratic form of C^2. Forms with negligible weight are returned as zero.
inline FormPair foliation_forms(const KrausPair& ch) {
  const Eigen::Matrix4d m = concurrence_quadratic_form(theta_from_kraus(ch));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
  const auto& mu = es.eigenvalues();  // ascending
  const double top = std::max(mu(3), 0.0);
  auto form = [&](int idx) {
    LinearForm f;
    if (!(top > 0.0) || mu(idx) <= 1e-12 * top) return f;
    const double s = 0.5 * std::sqrt(mu(idx));
    const Eigen::Vector4d v = es.eigenvectors().col(idx);
    f.c0 = s * v(0);
    f.c = {s * v(1), s * v(2), s * v(3)};
    return f;
  };
  return {form(3), form(2)};
}

inline FormPair forms_for(const ChannelSpec& spec) {
  if (std::holds_alternative<canonical_form>(spec)) return foliation_forms(spec);
  return foliation_forms(kraus_of(spec));
}

enum class leaf_kind { line, plane_disc, point };

inline const char* leaf_kind_name(leaf_kind k) {
  switch (k) {
    case leaf_kind::line: return "line";
    case leaf_kind::plane_disc: return "plane-disc";
    default: return "point";
  }
}

struct Leaf {
  leaf_kind kind;
  BlochVector base_point;
  /// line: {direction}; plane-disc: {in-plane direction through base_point, second in-plane direction}.
  std::vector<std::array<double, 3>> directions;
  /// line: chord ends; plane-disc: ends of the diameter through base_point; point: the state itself.
  std::vector<DensityOperator> endpoints;
  /// Chord midpoint or disc center, and half-chord length or disc radius.
  BlochVector center;
  double radius = 0.0;

  /// Point of the boundary circle of a plane-disc leaf.
  DensityOperator circle_point(double phi) const {
    const auto& u = directions.at(0);
    const auto& v = directions.at(1);
    const detail::vec3 p = detail::plus(
        center.array(), detail::plus(detail::scaled(u, radius * std::cos(phi)), detail::scaled(v, radius * std::sin(phi))));
    return DensityOperator::pure(pure_ket_from_bloch(BlochVector::from(p)));
  }

  /// base_point + t * directions[0]
  BlochVector at(double t) const {
    return BlochVector::from(detail::plus(base_point.array(), detail::scaled(directions.at(0), t)));
  }

  static Vec2 pure_ket_from_bloch(const BlochVector& b) {
    const double n = b.norm();
    const BlochVector u{b.x1 / n, b.x2 / n, b.x3 / n};
    // |psi> = (cos(t/2), e^{i phi} sin(t/2))
    const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + u.x3)));
    const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - u.x3)));
    const double r = std::hypot(u.x1, u.x2);
    const cplx phase = r > 0.0 ? cplx(u.x1 / r, u.x2 / r) : cplx(1.0);
    return {c, s * phase};
  }
};

namespace detail {

inline DensityOperator pure_at(const vec3& p) { return DensityOperator::pure(Leaf::pure_ket_from_bloch(BlochVector::from(p))); }

inline Leaf line_leaf(const BlochVector& base, const vec3& dir) {
  const vec3 b = base.array();
  // |b + t d|^2 = 1  ->  t^2 + 2 (b.d) t + |b|^2 - 1 = 0
  const double bd = dot(b, dir);
  const double disc = std::max(0.0, bd * bd - (dot(b, b) - 1.0));
  const double root = std::sqrt(disc);
  const double t1 = -bd - root;
  const double t2 = -bd + root;
  Leaf leaf{leaf_kind::line, base, {dir}, {}, {}, 0.0};
  const vec3 p1 = plus(b, scaled(dir, t1));
  const vec3 p2 = plus(b, scaled(dir, t2));
  leaf.endpoints = {pure_at(p1), pure_at(p2)};
  leaf.center = BlochVector::from(scaled(plus(p1, p2), 0.5));
  leaf.radius = root;
  return leaf;
}

inline Leaf disc_leaf(const BlochVector& base, const vec3& normal) {
  const vec3 b = base.array();
  const vec3 n = unit(normal);
  const vec3 c = scaled(n, dot(n, b));
  vec3 u = minus(b, c);
  if (length(u) < 1e-12) {
    // On the symmetry axis every diameter is optimal; prefer the x1 direction.
    u = minus(vec3{1, 0, 0}, scaled(n, n[0]));
    if (length(u) < 1e-6) u = minus(vec3{0, 1, 0}, scaled(n, n[1]));
  }
  u = unit(u);
  const vec3 v = unit(cross(n, u));
  const double radius = std::sqrt(std::max(0.0, 1.0 - dot(c, c)));
  Leaf leaf{leaf_kind::plane_disc, base, {u, v}, {}, BlochVector::from(c), radius};
  leaf.endpoints = {pure_at(minus(c, scaled(u, radius))), pure_at(plus(c, scaled(u, radius)))};
  return leaf;
}

}  // namespace detail

/// The leaf of the concurrence foliation that contains rho.
inline Leaf leaf_through(const FormPair& forms, const DensityOperator& rho) {
  const BlochVector b = rho.bloch();
  if (rho.is_pure(tol::structural)) {
    return {leaf_kind::point, b, {}, {rho}, b, 0.0};
  }
  const auto n1 = forms.first.c;
  const auto n2 = forms.second.c;
  const double l1 = detail::length(n1);
  const double l2 = detail::length(n2);
  if (std::max(l1, l2) < 1e-12) throw domain_error("leaf_through: concurrence vanishes identically (length-one channel)");
  const detail::vec3 d = detail::cross(n1, n2);
  if (std::min(l1, l2) > 0.0 && detail::length(d) > 1e-9 * l1 * l2)
    return detail::line_leaf(b, detail::canonical_sign(detail::unit(d)));
  return detail::disc_leaf(b, detail::canonical_sign(l1 >= l2 ? n1 : n2));
}

inline Leaf leaf_through(const ChannelSpec& spec, const DensityOperator& rho) {
  validate(spec);
  return leaf_through(forms_for(spec), rho);
}

inline Leaf leaf_through(const KrausPair& ch, const DensityOperator& rho) { return leaf_through(foliation_forms(ch), rho); }

/// Two-member decomposition of rho supported on the ends of its leaf chord
/// (or of the disc diameter through rho). Pure rho gives the trivial one.
inline PureDecomposition optimal_decomposition(const Leaf& leaf) {
  if (leaf.kind == leaf_kind::point) return PureDecomposition({{1.0, leaf.endpoints.front()}});
  const detail::vec3 b = leaf.base_point.array();
  const detail::vec3 p1 = leaf.endpoints[0].bloch().array();
  const detail::vec3 p2 = leaf.endpoints[1].bloch().array();
  const detail::vec3 chord = detail::minus(p2, p1);
  // rho = w1 p1 + (1 - w1) p2
  const double w2 = detail::dot(detail::minus(b, p1), chord) / detail::dot(chord, chord);
  const double w1 = 1.0 - w2;
  std::vector<PureDecomposition::member> members;
  if (w1 > 1e-15) members.push_back({w1, leaf.endpoints[0]});
  if (w2 > 1e-15) members.push_back({w2, leaf.endpoints[1]});
  return PureDecomposition(std::move(members));
}

inline PureDecomposition optimal_decomposition(const ChannelSpec& spec, const DensityOperator& rho) {
  return optimal_decomposition(leaf_through(spec, rho));
}

inline PureDecomposition optimal_decomposition(const KrausPair& ch, const DensityOperator& rho) {
  return optimal_decomposition(leaf_through(ch, rho));
}

/// Pure states |a> with <a|theta|a> = 0, i.e. mapped to pure outputs.
/// Up to two states; one for a double root.
inline std::vector<DensityOperator> zero_concurrence_states(const KrausPair& ch) {
  const Mat2 beta = theta_from_kraus(ch).alpha().conj();
  // beta00 a0^2 + 2 beta01 a0 a1 + beta11 a1^2 = 0
  const cplx b00 = beta(0, 0), b01 = beta(0, 1), b11 = beta(1, 1);
  const double scale = beta.max_abs();
  if (!(scale > 0.0)) throw domain_error("zero_concurrence_states: concurrence vanishes identically");
  const double eps = 1e-14 * scale;
  std::vector<Vec2> kets;
  if (std::abs(b00) <= eps && std::abs(b11) <= eps) {
    kets = {{1.0, 0.0}, {0.0, 1.0}};
  } else {
    const bool lead_a0 = std::abs(b00) >= std::abs(b11);
    // Quadratic a x^2 + 2 b x + c in the free coordinate x.
    const cplx a = lead_a0 ? b00 : b11;
    const cplx c = lead_a0 ? b11 : b00;
    const cplx root = std::sqrt(b01 * b01 - a * c);
    const cplx sgn = (std::conj(b01) * root).real() >= 0.0 ? 1.0 : -1.0;
    const cplx q = -(b01 + sgn * root);
    std::vector<cplx> xs;
    if (std::abs(q) <= eps) {
      xs = {0.0};
    } else {
      xs = {q / a, c / q};
    }
    for (const cplx& x : xs) kets.push_back(lead_a0 ? Vec2{x, 1.0} : Vec2{1.0, x});
    if (kets.size() == 2 && std::abs(root) <= 1e-12 * scale) kets.pop_back();
  }
  std::vector<DensityOperator> states;
  for (const auto& k : kets) states.push_back(DensityOperator::pure(k));
  return states;
}

/// Canonical-form variant: solutions of b10 a00 a0^2 = b01 a11 a1^2.
inline std::vector<DensityOperator> zero_concurrence_states(const ChannelSpec& spec) {
  if (!std::holds_alternative<canonical_form>(spec))
    throw domain_error("zero_concurrence_states: channel is not in canonical form");
  return zero_concurrence_states(kraus_of(spec));
}

}  // namespace roofkit
