// Completely positive maps of length two, named channel families, ensembles
// and the Holevo quantity.
#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "roofkit/qubit.hpp"

namespace roofkit {

/// Kraus operators of T(X) = A X A^+ + B X B^+.
class KrausPair {
 public:
  KrausPair(const Mat2& a, const Mat2& b) : a_(a), b_(b) {
    if (!a.finite() || !b.finite()) throw domain_error("Kraus operators must have finite entries");
  }

  const Mat2& A() const { return a_; }
  const Mat2& B() const { return b_; }

  /// A and B are linearly independent: the Gram determinant of their 4-vectors
  /// is not small relative to |A|^2 |B|^2.
  bool is_length_two(double rel_tolerance = 1e-10) const {
    double na = 0.0, nb = 0.0;
    cplx ab = 0.0;
    for (int i = 0; i < 4; ++i) {
      na += std::norm(a_.m[i]);
      nb += std::norm(b_.m[i]);
      ab += std::conj(a_.m[i]) * b_.m[i];
    }
    if (na == 0.0 || nb == 0.0) return false;
    const double gram = na * nb - std::norm(ab);
    return gram > rel_tolerance * rel_tolerance * na * nb;
  }

  /// A^+A + B^+B
  Mat2 completeness() const { return a_.adjoint() * a_ + b_.adjoint() * b_; }

  bool is_trace_preserving(double tolerance = tol::closed_form) const {
    return max_abs_diff(completeness(), Mat2::identity()) <= tolerance;
  }

  friend bool operator==(const KrausPair&, const KrausPair&) = default;

 private:
  Mat2 a_;
  Mat2 b_;
};

/// A X A^+ + B X B^+ for any matrix X, without trace-preservation checks.
inline Mat2 apply_map(const KrausPair& ch, const Mat2& x) {
  return ch.A() * x * ch.A().adjoint() + ch.B() * x * ch.B().adjoint();
}

/// Channel application; refuses pairs that are not trace preserving.
inline DensityOperator apply_channel(const KrausPair& ch, const DensityOperator& rho) {
  if (!ch.is_trace_preserving()) throw domain_error("apply_channel: Kraus pair is not trace preserving");
  return DensityOperator::from_matrix(apply_map(ch, rho.matrix()), 1e-10);
}

struct kraus_channel {
  KrausPair pair;
  friend bool operator==(const kraus_channel&, const kraus_channel&) = default;
};

/// Off-diagonal entries scaled by z, diagonal fixed.
struct phase_damping {
  cplx z;
  friend bool operator==(const phase_damping&, const phase_damping&) = default;
};

/// A = diag(1, sqrt p), B = sqrt(1-p) |0><1|. p = 1 is the noiseless limit.
struct amplitude_damping {
  double p;
  friend bool operator==(const amplitude_damping&, const amplitude_damping&) = default;
};

/// A = diag(a00, a11), B = antidiag(b01, b10).
struct canonical_form {
  cplx a00, a11, b01, b10;
  friend bool operator==(const canonical_form&, const canonical_form&) = default;
};

using ChannelSpec = std::variant<kraus_channel, phase_damping, amplitude_damping, canonical_form>;

inline std::string kind_name(const ChannelSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, kraus_channel>) return "kraus";
        else if constexpr (std::is_same_v<S, phase_damping>) return "phase_damping";
        else if constexpr (std::is_same_v<S, amplitude_damping>) return "amplitude_damping";
        else return "canonical";
      },
      spec);
}

/// Throws domain_error when the spec's parameters are out of range.
inline void validate(const ChannelSpec& spec) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, kraus_channel>) {
          if (!s.pair.is_length_two()) throw domain_error("kraus: A and B are linearly dependent");
        } else if constexpr (std::is_same_v<S, phase_damping>) {
          if (!(std::abs(s.z) < 1.0)) throw domain_error("phase_damping: |z| must be < 1");
        } else if constexpr (std::is_same_v<S, amplitude_damping>) {
          if (!(s.p > 0.0 && s.p <= 1.0)) throw domain_error("amplitude_damping: p must lie in (0, 1]");
        } else {
          const double r0 = std::norm(s.a00) + std::norm(s.b10);
          const double r1 = std::norm(s.a11) + std::norm(s.b01);
          if (!(std::abs(r0 - 1.0) <= tol::closed_form && std::abs(r1 - 1.0) <= tol::closed_form))
            throw domain_error("canonical: |a00|^2+|b10|^2 and |a11|^2+|b01|^2 must equal 1");
        }
      },
      spec);
}

inline KrausPair kraus_of(const ChannelSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& s) -> KrausPair {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, kraus_channel>) {
          return s.pair;
        } else if constexpr (std::is_same_v<S, phase_damping>) {
          // A = diag(1, z*) so that rho01 -> z rho01; theta does not see the conjugation.
          return {Mat2::diag(1.0, std::conj(s.z)), Mat2::diag(0.0, std::sqrt(1.0 - std::norm(s.z)))};
        } else if constexpr (std::is_same_v<S, amplitude_damping>) {
          return {Mat2::diag(1.0, std::sqrt(s.p)), Mat2::antidiag(std::sqrt(1.0 - s.p), 0.0)};
        } else {
          return {Mat2::diag(s.a00, s.a11), Mat2::antidiag(s.b01, s.b10)};
        }
      },
      spec);
}

/// T(rho) for a spec. Named families use their defining action directly.
inline DensityOperator apply_channel(const ChannelSpec& spec, const DensityOperator& rho) {
  validate(spec);
  if (const auto* pd = std::get_if<phase_damping>(&spec)) {
    Mat2 m = rho.matrix();
    m(0, 1) *= pd->z;
    m(1, 0) *= std::conj(pd->z);
    return DensityOperator::from_matrix(m);
  }
  if (const auto* ad = std::get_if<amplitude_damping>(&spec)) {
    const double p = ad->p;
    // Off-diagonal factor sqrt(p), as produced by the Kraus pair.
    const double s = std::sqrt(p);
    Mat2 m{{rho.p00() + (1.0 - p) * rho.p11(), s * rho.p01(), s * std::conj(rho.p01()), p * rho.p11()}};
    return DensityOperator::from_matrix(m);
  }
  return apply_channel(kraus_of(spec), rho);
}

/// Finite list of (weight, state) with weights summing to one.
class Ensemble {
 public:
  struct member {
    double weight;
    DensityOperator state;
  };

  static constexpr std::size_t default_cap = 16;

  explicit Ensemble(std::vector<member> members, std::size_t cap = default_cap) : members_(std::move(members)) {
    if (members_.empty()) throw domain_error("ensemble is empty");
    if (members_.size() > cap) throw domain_error("ensemble exceeds the configured length cap");
    double total = 0.0;
    for (const auto& m : members_) {
      if (!(m.weight > 0.0)) throw domain_error("ensemble weights must be positive");
      total += m.weight;
    }
    if (std::abs(total - 1.0) > tol::structural) throw domain_error("ensemble weights must sum to 1");
  }

  const std::vector<member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  /// sum p_j rho_j
  DensityOperator average() const {
    Mat2 acc;
    for (const auto& m : members_) acc += m.state.matrix() * m.weight;
    return DensityOperator::from_matrix(acc, 1e-10);
  }

 private:
  std::vector<member> members_;
};

/// chi = S(T(av)) - sum p_j S(T(rho_j)); identity channel when `ch` is empty.
inline double holevo_chi(const Ensemble& e, const std::optional<KrausPair>& ch = std::nullopt,
                         entropy_unit unit = entropy_unit::nats) {
  auto image = [&](const DensityOperator& r) { return ch ? apply_channel(*ch, r) : r; };
  double mixed = 0.0;
  for (const auto& m : e.members()) mixed += m.weight * von_neumann_entropy(image(m.state));
  return to_unit(von_neumann_entropy(image(e.average())) - mixed, unit);
}

}  // namespace roofkit
