// Closed-form concurrences of length-two qubit channels.
#pragma once

#include <string>

#include "roofkit/theta.hpp"

namespace roofkit {

namespace detail {
/// sqrt of a radicand that may be slightly negative from rounding; tiny results snap to 0.
inline double concurrence_sqrt(double radicand) {
  const double c = std::sqrt(std::max(0.0, radicand));
  return c < tol::structural ? 0.0 : c;
}
}  // namespace detail

/// C(T; pi) = 2 sqrt(det T(pi)) for a pure state pi.
inline double concurrence_pure(const KrausPair& ch, const DensityOperator& pi) {
  if (!pi.is_pure()) throw domain_error("concurrence_pure: state is not pure");
  return 2.0 * detail::concurrence_sqrt(apply_map(ch, pi.matrix()).det().real());
}

/// Flat-roof concurrence C^2 = Tr(rho theta rho theta) - 2 det(rho) det sqrt(theta^2).
inline double concurrence_theta(const AntilinearHermitian& theta, const DensityOperator& rho) {
  const double tr = (rho.matrix() * theta.sandwich(rho.matrix())).trace().real();
  return detail::concurrence_sqrt(tr - 2.0 * rho.det() * theta.det_sqrt_squared());
}

namespace detail {
/// Principal square root of a positive semi-definite Hermitian 2x2 matrix.
inline Mat2 sqrt_psd(const Mat2& m) {
  const double d = std::sqrt(std::max(0.0, m.det().real()));
  const double t = m.trace().real() + 2.0 * d;
  if (t <= 0.0) return Mat2::zero();
  return (m + Mat2::identity() * d) * (1.0 / std::sqrt(t));
}
}  // namespace detail

/// max(0, lambda1 - lambda2) with lambda the spectrum of
/// (rho^1/2 theta rho theta rho^1/2)^1/2. Independent of concurrence_theta's trace formula.
inline double concurrence_spectral(const AntilinearHermitian& theta, const DensityOperator& rho) {
  const Mat2 r = detail::sqrt_psd(rho.matrix());
  Mat2 inner_m = r * theta.sandwich(rho.matrix()) * r;
  inner_m(1, 0) = std::conj(inner_m(0, 1));
  inner_m(0, 0) = inner_m(0, 0).real();
  inner_m(1, 1) = inner_m(1, 1).real();
  const Spectrum2 s = eig2(detail::sqrt_psd(inner_m));
  return std::max(0.0, s.lambda_hi - s.lambda_lo);
}

/// Square roots entering the second linear form of a canonical channel, w * w' >= 0.
struct canonical_roots {
  cplx w;        // sqrt(b10 a00 b01* a11*)
  cplx partner;  // sqrt(b10* a00* b01 a11)
};

inline canonical_roots canonical_square_roots(const canonical_form& c) {
  const cplx y0 = 2.0 * c.b10 * c.a00;
  const cplx y1 = 2.0 * c.b01 * c.a11;
  canonical_roots r{0.5 * std::sqrt(y0 * std::conj(y1)), 0.5 * std::sqrt(std::conj(y0) * y1)};
  if ((r.w * r.partner).real() < 0.0) r.partner = -r.partner;
  return r;
}

/// L1(rho) = rho00 |b10 a00| - rho11 |b01 a11|
inline double canonical_l1(const canonical_form& c, const DensityOperator& rho) {
  return rho.p00() * std::abs(c.b10 * c.a00) - rho.p11() * std::abs(c.b01 * c.a11);
}

/// L2(rho) = i (rho01 w - rho10 w')
inline double canonical_l2(const canonical_form& c, const DensityOperator& rho) {
  const canonical_roots r = canonical_square_roots(c);
  return (cplx(0, 1) * (rho.p01() * r.w - std::conj(rho.p01()) * r.partner)).real();
}

/// 2 sqrt(L1^2 + L2^2) for a channel in canonical form.
inline double concurrence_canonical(const ChannelSpec& spec, const DensityOperator& rho) {
  const auto* c = std::get_if<canonical_form>(&spec);
  if (!c) throw domain_error("concurrence_canonical: channel is not in canonical form");
  validate(spec);
  const double l1 = canonical_l1(*c, rho);
  const double l2 = canonical_l2(*c, rho);
  return 2.0 * detail::concurrence_sqrt(l1 * l1 + l2 * l2);
}

/// Named-family closed forms: phase damping and amplitude damping only.
inline double concurrence_named(const ChannelSpec& spec, const DensityOperator& rho) {
  validate(spec);
  if (const auto* pd = std::get_if<phase_damping>(&spec)) {
    const BlochVector b = rho.bloch();
    return detail::concurrence_sqrt((1.0 - std::norm(pd->z)) * (b.x1 * b.x1 + b.x2 * b.x2));
  }
  if (const auto* ad = std::get_if<amplitude_damping>(&spec)) {
    const double c = 2.0 * std::sqrt(ad->p * (1.0 - ad->p)) * std::max(0.0, rho.p11());
    return c < tol::structural ? 0.0 : c;
  }
  throw domain_error("concurrence_named: no closed form for channel kind '" + kind_name(spec) + "'");
}

/// The theta of a spec's Kraus pair. Amplitude damping at p = 1 has B = 0 and theta = 0.
inline AntilinearHermitian theta_of(const ChannelSpec& spec) { return theta_from_kraus(kraus_of(spec)); }

enum class concurrence_method { named_closed_form, theta, canonical };

inline std::string method_name(concurrence_method m) {
  switch (m) {
    case concurrence_method::named_closed_form: return "named-closed-form";
    case concurrence_method::canonical: return "canonical";
    default: return "theta";
  }
}

struct concurrence_report {
  double value;
  concurrence_method method;
  double theta_value;  // generic theta-path value, always computed
};

/// Dispatches to the most specific closed form and records the generic theta value beside it.
inline concurrence_report concurrence(const ChannelSpec& spec, const DensityOperator& rho) {
  validate(spec);
  const double generic = concurrence_theta(theta_of(spec), rho);
  if (std::holds_alternative<phase_damping>(spec) || std::holds_alternative<amplitude_damping>(spec))
    return {concurrence_named(spec, rho), concurrence_method::named_closed_form, generic};
  if (std::holds_alternative<canonical_form>(spec))
    return {concurrence_canonical(spec, rho), concurrence_method::canonical, generic};
  return {generic, concurrence_method::theta, generic};
}

inline double concurrence(const KrausPair& ch, const DensityOperator& rho) {
  return concurrence_theta(theta_from_kraus(ch), rho);
}

}  // namespace roofkit
