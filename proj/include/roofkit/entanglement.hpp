// E(T; rho), H(T; rho) and 1-shot capacities of length-two qubit channels.
#pragma once

#include <cstdint>
#include <limits>

#include "roofkit/concurrence.hpp"
#include "roofkit/detail/local_search.hpp"
#include "roofkit/random.hpp"

namespace roofkit {

/// E(T; rho) = h2(C(T; rho)), in nats.
inline double entanglement_E(const ChannelSpec& spec, const DensityOperator& rho) {
  return h2(std::min(1.0, concurrence(spec, rho).value));
}

inline double entanglement_E(const KrausPair& ch, const DensityOperator& rho) {
  return h2(std::min(1.0, concurrence(ch, rho)));
}

/// H(T; rho) = S(T(rho)) - E(T; rho), in nats.
inline double entropy_H(const ChannelSpec& spec, const DensityOperator& rho) {
  return von_neumann_entropy(apply_channel(spec, rho)) - entanglement_E(spec, rho);
}

inline double entropy_H(const KrausPair& ch, const DensityOperator& rho) {
  return von_neumann_entropy(apply_channel(ch, rho)) - entanglement_E(ch, rho);
}

struct CapacityResult {
  double capacity;  // nats
  double maximizer_r;  // rho11 of the maximizing input
  DensityOperator maximizer_state;
  bool converged;
};

/// f(r) = h(p r) - h((1 - sqrt(1 - 4 p (1-p) r^2)) / 2): H(T; diag(1-r, r)) for amplitude damping.
inline double amplitude_damping_objective(double p, double r) {
  return h(p * r) - h2(std::min(1.0, 2.0 * std::sqrt(p * (1.0 - p)) * r));
}

/// Ternary search for the unique maximizer of the concave f on [0, 1].
inline CapacityResult capacity_amplitude_damping(double p, double tolerance = 1e-10) {
  if (!(p > 0.0 && p <= 1.0)) throw domain_error("capacity_amplitude_damping: p must lie in (0, 1]");
  if (!(tolerance >= 1e-12)) throw domain_error("capacity_amplitude_damping: tolerance must be >= 1e-12");
  double lo = 0.0, hi = 1.0;
  int iterations = 0;
  while (hi - lo > tolerance && iterations < 400) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (amplitude_damping_objective(p, m1) < amplitude_damping_objective(p, m2))
      lo = m1;
    else
      hi = m2;
    ++iterations;
  }
  const double r = 0.5 * (lo + hi);
  return {amplitude_damping_objective(p, r), r, DensityOperator::from_matrix(Mat2::diag(1.0 - r, r)),
          hi - lo <= tolerance};
}

struct capacity_options {
  double tolerance = 1e-9;  // final pattern-search step
  std::size_t starts = 8;
  std::size_t budget = 40000;
  std::uint64_t seed = 0xcafe;
};

namespace detail {

/// Maps unconstrained coordinates into the closed Bloch ball.
inline BlochVector clip_to_ball(std::span<const double> u) {
  BlochVector b{u[0], u[1], u[2]};
  const double n = b.norm();
  if (n > 1.0) b = {b.x1 / n, b.x2 / n, b.x3 / n};
  return b;
}

template <class H>
CapacityResult maximize_over_ball(H&& entropy_of, bool diagonal_only, const capacity_options& opt) {
  Rng rng(opt.seed);
  const std::size_t dims = diagonal_only ? 1 : 3;
  auto to_state = [&](std::span<const double> u) {
    if (diagonal_only) return density_from_bloch({0.0, 0.0, std::clamp(u[0], -1.0, 1.0)});
    return density_from_bloch(clip_to_ball(u));
  };
  auto objective = [&](std::span<const double> u) { return -entropy_of(to_state(u)); };

  const std::size_t starts = std::max<std::size_t>(opt.starts, 1);
  search_options so;
  so.initial_step = 0.25;
  so.min_step = opt.tolerance;
  so.max_evaluations = std::max<std::size_t>(opt.budget / starts, 16);

  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<double> x0(dims, 0.0);
    if (s > 0) {
      const BlochVector b = random_bloch(rng, 0.9);
      if (diagonal_only) x0[0] = b.x3;
      else x0 = {b.x1, b.x2, b.x3};
    }
    search_result r = pattern_search(objective, std::move(x0), so);
    if (r.value < best) {
      best = r.value;
      best_x = std::move(r.x);
      converged = r.converged;
    }
  }
  const DensityOperator state = to_state(best_x);
  return {-best, state.p11(), state, converged};
}

}  // namespace detail

/// Maximizes H(T; rho) over input states by multi-start pattern search.
/// Amplitude damping is searched on the diagonal slice only.
inline CapacityResult capacity_numeric(const ChannelSpec& spec, const capacity_options& opt = {}) {
  validate(spec);
  const bool diagonal = std::holds_alternative<amplitude_damping>(spec);
  return detail::maximize_over_ball([&](const DensityOperator& rho) { return entropy_H(spec, rho); }, diagonal, opt);
}

/// Full three-parameter search for an arbitrary trace-preserving pair.
inline CapacityResult capacity_numeric(const KrausPair& ch, const capacity_options& opt = {}) {
  if (!ch.is_trace_preserving()) throw domain_error("capacity_numeric: Kraus pair is not trace preserving");
  return detail::maximize_over_ball([&](const DensityOperator& rho) { return entropy_H(ch, rho); }, false, opt);
}

}  // namespace roofkit
