// Brute-force convex and concave roofs: optimize sum_j w_j g(pi_j) over the
// pure decompositions of a fixed state.
//
// Every pure decomposition of rho with m members is
//   |psi_j> = sum_k U_jk sqrt(lambda_k) |e_k>,  w_j = <psi_j|psi_j>,
// with (lambda_k, e_k) the eigensystem of rho and U an m x 2 isometry.
// The search runs over unconstrained complex m x 2 matrices whose columns
// are Gram-Schmidt orthonormalized into U.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "roofkit/channels.hpp"
#include "roofkit/detail/local_search.hpp"
#include "roofkit/random.hpp"

namespace roofkit {

/// Pure-state ensemble with weights summing to one.
class PureDecomposition {
 public:
  struct member {
    double weight;
    DensityOperator state;
  };

  explicit PureDecomposition(std::vector<member> members) : members_(std::move(members)) {
    if (members_.empty()) throw domain_error("pure decomposition is empty");
    double total = 0.0;
    for (const auto& m : members_) {
      if (!(m.weight > 0.0)) throw domain_error("pure decomposition weights must be positive");
      if (!m.state.is_pure()) throw domain_error("pure decomposition member is not pure");
      total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-10) throw domain_error("pure decomposition weights must sum to 1");
  }

  const std::vector<member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  Mat2 average() const {
    Mat2 acc;
    for (const auto& m : members_) acc += m.state.matrix() * m.weight;
    return acc;
  }

  /// Largest entry of sum w_j pi_j - rho.
  double average_residual(const DensityOperator& rho) const { return max_abs_diff(average(), rho.matrix()); }

  Ensemble as_ensemble() const {
    std::vector<Ensemble::member> e;
    for (const auto& m : members_) e.push_back({m.weight, m.state});
    return Ensemble(std::move(e));
  }

 private:
  std::vector<member> members_;
};

/// Rows of an m x 2 matrix with orthonormal columns.
using Mixer = std::vector<Vec2>;

inline PureDecomposition decomposition_from_mixer(const DensityOperator& rho, const Mixer& mixer) {
  if (rho.is_pure(tol::structural)) return PureDecomposition({{1.0, rho}});
  if (mixer.size() < 2 || mixer.size() > 4) throw domain_error("mixer must have between 2 and 4 rows");
  cplx g00 = 0.0, g01 = 0.0, g11 = 0.0;
  for (const auto& row : mixer) {
    g00 += std::norm(row[0]);
    g11 += std::norm(row[1]);
    g01 += std::conj(row[0]) * row[1];
  }
  if (std::abs(g00 - 1.0) > 1e-10 || std::abs(g11 - 1.0) > 1e-10 || std::abs(g01) > 1e-10)
    throw domain_error("mixer columns are not orthonormal");

  const Eigensystem2 es = eigh2(rho.matrix());
  const double s0 = std::sqrt(std::max(0.0, es.values.lambda_hi));
  const double s1 = std::sqrt(std::max(0.0, es.values.lambda_lo));
  std::vector<PureDecomposition::member> members;
  for (const auto& row : mixer) {
    const cplx c0 = row[0] * s0;
    const cplx c1 = row[1] * s1;
    const Vec2 psi{c0 * es.hi[0] + c1 * es.lo[0], c0 * es.hi[1] + c1 * es.lo[1]};
    const double w = std::norm(psi[0]) + std::norm(psi[1]);
    if (w < 1e-12) continue;
    members.push_back({w, DensityOperator::pure(psi)});
  }
  return PureDecomposition(std::move(members));
}

struct RoofResult {
  double value;
  PureDecomposition decomposition;
  std::vector<double> member_values;
  bool converged;
  std::size_t evaluations;
};

struct roof_options {
  std::size_t budget = 20000;  // total objective evaluations
  std::size_t starts = 20;
  std::uint64_t seed = 0x5eed;
  double min_step = 1e-9;
};

/// sum_j w_j g(pi_j)
template <class G>
double decomposition_value(G&& g, const PureDecomposition& d) {
  double v = 0.0;
  for (const auto& m : d.members()) v += m.weight * g(m.state);
  return v;
}

namespace detail {

/// Gram-Schmidt on the two columns of the m x 2 matrix packed as
/// (re, im) pairs, row-major. Returns false for (nearly) dependent columns.
inline bool mixer_from_params(std::span<const double> p, Mixer& out) {
  const std::size_t m = p.size() / 4;
  out.resize(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = {cplx(p[4 * j], p[4 * j + 1]), cplx(p[4 * j + 2], p[4 * j + 3])};
  double n0 = 0.0;
  for (const auto& r : out) n0 += std::norm(r[0]);
  n0 = std::sqrt(n0);
  if (n0 < 1e-8) return false;
  for (auto& r : out) r[0] /= n0;
  cplx proj = 0.0;
  for (const auto& r : out) proj += std::conj(r[0]) * r[1];
  for (auto& r : out) r[1] -= proj * r[0];
  double n1 = 0.0;
  for (const auto& r : out) n1 += std::norm(r[1]);
  n1 = std::sqrt(n1);
  if (n1 < 1e-8) return false;
  for (auto& r : out) r[1] /= n1;
  return true;
}

template <class G>
RoofResult roof_search(G&& g, const DensityOperator& rho, const roof_options& opt, double sign) {
  if (rho.is_pure(tol::structural)) {
    const double v = g(rho);
    return {v, PureDecomposition({{1.0, rho}}), {v}, true, 1};
  }
  if (opt.starts == 0) throw domain_error("roof search needs at least one start");

  const Eigensystem2 es = eigh2(rho.matrix());
  const double s0 = std::sqrt(std::max(0.0, es.values.lambda_hi));
  const double s1 = std::sqrt(std::max(0.0, es.values.lambda_lo));

  // Objective on raw parameters; mirrors decomposition_from_mixer without its validation overhead.
  Mixer mixer;
  auto objective = [&](std::span<const double> p) {
    if (!mixer_from_params(p, mixer)) return std::numeric_limits<double>::infinity();
    double v = 0.0;
    for (const auto& row : mixer) {
      const cplx c0 = row[0] * s0;
      const cplx c1 = row[1] * s1;
      const Vec2 psi{c0 * es.hi[0] + c1 * es.lo[0], c0 * es.hi[1] + c1 * es.lo[1]};
      const double w = std::norm(psi[0]) + std::norm(psi[1]);
      if (w < 1e-12) continue;
      v += w * g(DensityOperator::pure(psi));
    }
    return sign * v;
  };

  Rng rng(opt.seed);
  const std::size_t per_start = std::max<std::size_t>(opt.budget / opt.starts, 8);
  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
  bool best_converged = false;
  std::size_t total = 0;

  for (std::size_t s = 0; s < opt.starts; ++s) {
    const std::size_t m = 2 + s % 3;
    std::vector<double> x0(4 * m);
    for (auto& v : x0) v = rng.normal();
    if (s == 0) {
      // Eigen-decomposition as a deterministic first start.
      std::fill(x0.begin(), x0.end(), 0.0);
      x0[0] = 1.0;
      x0[6] = 1.0;
    }
    search_options so;
    so.initial_step = 0.3;
    so.min_step = opt.min_step;
    so.max_evaluations = per_start;
    search_result r = pattern_search(objective, std::move(x0), so);
    total += r.evaluations;
    if (r.value < best) {
      best = r.value;
      best_x = std::move(r.x);
      best_converged = r.converged;
    }
  }

  mixer_from_params(best_x, mixer);
  PureDecomposition d = decomposition_from_mixer(rho, mixer);
  std::vector<double> values;
  double v = 0.0;
  for (const auto& m : d.members()) {
    values.push_back(g(m.state));
    v += m.weight * values.back();
  }
  return {v, std::move(d), std::move(values), best_converged, total};
}

}  // namespace detail

/// Convex roof: the least sum_j w_j g(pi_j) found over decompositions of rho
/// with 2 to 4 members. An upper bound on the true roof.
template <class G>
RoofResult roof_min(G&& g, const DensityOperator& rho, const roof_options& opt = {}) {
  return detail::roof_search(g, rho, opt, 1.0);
}

/// Concave roof: the largest value found. A lower bound on the true roof.
template <class G>
RoofResult roof_max(G&& g, const DensityOperator& rho, const roof_options& opt = {}) {
  return detail::roof_search(g, rho, opt, -1.0);
}

/// max_j |g(pi_j) - value|; zero certifies a flat optimal decomposition.
inline double flatness_residual(const RoofResult& r) {
  double worst = 0.0;
  for (double v : r.member_values) worst = std::max(worst, std::abs(v - r.value));
  return worst;
}

}  // namespace roofkit
