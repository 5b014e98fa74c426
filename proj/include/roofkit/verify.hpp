// Seeded property suite covering the algebraic identities, inequalities and
// oracle agreements of every module. Drives `roofkit verify`.
#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "roofkit/entanglement.hpp"
#include "roofkit/foliation.hpp"
#include "roofkit/random.hpp"
#include "roofkit/roof_oracle.hpp"

namespace roofkit::verify {

struct property_result {
  std::string name;
  double worst;  // largest residual (or violation) observed
  double limit;
  std::size_t cases;
  bool passed;
};

struct suite_config {
  std::uint64_t seed = 42;
  std::size_t cases = 50;
  std::size_t budget = 20000;  // roof-oracle evaluations per roof
};

struct report {
  std::vector<property_result> properties;
  bool all_passed() const {
    for (const auto& p : properties)
      if (!p.passed) return false;
    return true;
  }
  std::string to_string() const {
    std::string out;
    char line[256];
    for (const auto& p : properties) {
      std::snprintf(line, sizeof line, "%s  %-34s worst=%.3e  limit=%.1e  cases=%zu\n", p.passed ? "PASS" : "FAIL",
                    p.name.c_str(), p.worst, p.limit, p.cases);
      out += line;
    }
    std::snprintf(line, sizeof line, "%s\n", all_passed() ? "ALL PASS" : "FAILURES");
    out += line;
    return out;
  }
};

namespace detail {

/// |a - b| / max(1, |b|)
inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline double alpha_residual(const AntilinearHermitian& x, const AntilinearHermitian& y) {
  return max_abs_diff(x.alpha(), y.alpha()) / std::max(1.0, y.alpha().max_abs());
}

inline double entropy_of_image(const KrausPair& ch, const DensityOperator& pi) {
  return von_neumann_entropy(DensityOperator::from_matrix(apply_map(ch, pi.matrix()), 1e-9));
}

/// One property: runs `body` for each case with its own generator stream and
/// keeps the worst returned residual.
inline property_result run(const std::string& name, double limit, std::size_t cases, std::uint64_t seed,
                           const std::function<double(Rng&)>& body) {
  double worst = 0.0;
  Rng master(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng(master.next());
    worst = std::max(worst, body(rng));
  }
  return {name, worst, limit, cases, worst <= limit};
}

}  // namespace detail

inline report run_suite(const suite_config& cfg) {
  if (cfg.cases == 0) throw domain_error("verify: cases must be >= 1");
  using detail::rel;
  report rep;
  std::uint64_t stream = cfg.seed;
  auto next_seed = [&] { return stream = stream * 6364136223846793005ULL + 1442695040888963407ULL; };
  auto add = [&](const std::string& name, double limit, std::size_t cases, const std::function<double(Rng&)>& body) {
    rep.properties.push_back(detail::run(name, limit, cases, next_seed(), body));
  };
  const std::size_t n = cfg.cases;

  add("qubit.bloch_round_trip", 1e-14, n, [](Rng& rng) {
    const BlochVector b = random_bloch(rng);
    const BlochVector r = bloch_from_density(density_from_bloch(b));
    return std::max({std::abs(r.x1 - b.x1), std::abs(r.x2 - b.x2), std::abs(r.x3 - b.x3)});
  });
  add("qubit.eig2_trace_det", 1e-13, n, [](Rng& rng) {
    const Mat2 m = random_mixed_state(rng, 1.0).matrix();
    const Spectrum2 s = eig2(m);
    return std::max(std::abs(s.lambda_hi + s.lambda_lo - m.trace().real()),
                    std::abs(s.lambda_hi * s.lambda_lo - m.det().real()));
  });
  add("channels.trace_and_positivity", 1e-12, n, [](Rng& rng) {
    const DensityOperator out = apply_channel(random_channel(rng), random_mixed_state(rng, 1.0));
    return std::max(std::abs(out.matrix().trace().real() - 1.0), std::max(0.0, -out.det()));
  });
  add("channels.holevo_data_processing", 1e-9, n, [](Rng& rng) {
    std::vector<Ensemble::member> members;
    const std::size_t m = 2 + rng.next() % 4;
    std::vector<double> w(m);
    double total = 0.0;
    for (auto& x : w) total += (x = rng.uniform(0.05, 1.0));
    for (std::size_t j = 0; j < m; ++j) members.push_back({w[j] / total, random_mixed_state(rng, 1.0)});
    double sum = 0.0;
    for (const auto& mm : members) sum += mm.weight;
    members.back().weight += 1.0 - sum;
    const Ensemble e(std::move(members));
    const KrausPair ch = random_channel(rng);
    return std::max(0.0, holevo_chi(e, ch) - holevo_chi(e));
  });
  add("theta.dual_path", 1e-13, n, [](Rng& rng) {
    const KrausPair p = random_kraus_pair(rng);
    return detail::alpha_residual(theta_spinflip_form(p.A(), p.B()), theta_from_kraus(p.A(), p.B()));
  });
  add("theta.antisymmetry", 0.0, n, [](Rng& rng) {
    const KrausPair p = random_kraus_pair(rng);
    return (theta_from_kraus(p.A(), p.B()).alpha() + theta_from_kraus(p.B(), p.A()).alpha()).max_abs();
  });
  add("theta.determinant_link", 1e-12, n, [](Rng& rng) {
    const KrausPair p = random_kraus_pair(rng);
    const Vec2 a = random_unit_vector(rng);
    const double lhs = 4.0 * apply_map(p, outer(a, a)).det().real();
    const double rhs = std::norm(pure_expectation(theta_from_kraus(p), a));
    return rel(lhs, rhs);
  });
  add("theta.module_change", 1e-13, n, [](Rng& rng) {
    const KrausPair p = random_kraus_pair(rng);
    const Mat2 mu = random_matrix(rng);
    return detail::alpha_residual(theta_module_change(theta_from_kraus(p), mu), theta_from_kraus(mix_kraus(p, mu)));
  });
  add("theta.conjugate_transform", 1e-13, n, [](Rng& rng) {
    const KrausPair p = random_kraus_pair(rng);
    const Mat2 c1 = random_matrix(rng), c2 = random_matrix(rng);
    return detail::alpha_residual(theta_conjugate_transform(theta_from_kraus(p), c1, c2),
                                  theta_from_kraus(c1 * p.A() * c2, c1 * p.B() * c2));
  });
  add("theta.tensor_identity", 1e-13, n, [](Rng& rng) {
    const KrausPair p = random_kraus_pair(rng);
    return antisymmetric_identity_residual(p.A(), p.B(), random_unit_vector(rng));
  });
  add("concurrence.trace_vs_spectral", 1e-10, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng, 1.0);
    const AntilinearHermitian th = theta_from_kraus(ch);
    return std::abs(concurrence_theta(th, rho) - concurrence_spectral(th, rho));
  });
  add("concurrence.pure_roof_agreement", 1e-12, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator pi = random_pure_state(rng);
    return std::abs(concurrence_theta(theta_from_kraus(ch), pi) - concurrence_pure(ch, pi));
  });
  add("concurrence.convexity", 1e-10, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator a = random_mixed_state(rng, 1.0), b = random_mixed_state(rng, 1.0);
    const double t = rng.uniform();
    const DensityOperator mid = DensityOperator::from_matrix(a.matrix() * t + b.matrix() * (1.0 - t));
    return std::max(0.0, concurrence(ch, mid) - t * concurrence(ch, a) - (1.0 - t) * concurrence(ch, b));
  });
  add("concurrence.canonical_vs_theta", 1e-12, n, [](Rng& rng) {
    const double s0 = rng.uniform(), s1 = rng.uniform();
    const ChannelSpec spec = canonical_form{std::polar(std::sqrt(1 - s0), rng.uniform(0, 6.3)),
                                            std::polar(std::sqrt(1 - s1), rng.uniform(0, 6.3)),
                                            std::polar(std::sqrt(s1), rng.uniform(0, 6.3)),
                                            std::polar(std::sqrt(s0), rng.uniform(0, 6.3))};
    const DensityOperator rho = random_mixed_state(rng, 1.0);
    return std::abs(concurrence_canonical(spec, rho) - concurrence_theta(theta_of(spec), rho));
  });

  const std::size_t oracle_cases = std::max<std::size_t>(1, n / 5);
  const std::size_t budget = cfg.budget;
  add("oracle.concurrence_roof", tol::oracle, oracle_cases, [budget](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng);
    roof_options o;
    o.budget = budget;
    o.seed = rng.next();
    const RoofResult r = roof_min([&](const DensityOperator& p) { return concurrence_pure(ch, p); }, rho, o);
    return std::abs(r.value - concurrence(ch, rho));
  });
  add("oracle.entanglement_roof", 2e-4, oracle_cases, [budget](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng);
    roof_options o;
    o.budget = budget;
    o.seed = rng.next();
    const RoofResult r = roof_min([&](const DensityOperator& p) { return detail::entropy_of_image(ch, p); }, rho, o);
    return std::max(std::abs(r.value - entanglement_E(ch, rho)), flatness_residual(r) > 1e-3 ? 1.0 : 0.0);
  });
  add("oracle.sandwich", 2e-4, oracle_cases, [budget](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng);
    auto g = [&](const DensityOperator& p) { return detail::entropy_of_image(ch, p); };
    roof_options o;
    o.budget = budget;
    o.seed = rng.next();
    const double lo = roof_min(g, rho, o).value;
    const double hi = roof_max(g, rho, o).value;
    Mixer mixer(3);
    std::array<double, 12> raw{};
    for (auto& x : raw) x = rng.normal();
    roofkit::detail::mixer_from_params(raw, mixer);
    const double v = decomposition_value(g, decomposition_from_mixer(rho, mixer));
    return std::max({0.0, lo - v, v - hi});
  });
  add("foliation.leaf_constancy", 1e-10, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng);
    const Leaf leaf = leaf_through(ch, rho);
    const double c = concurrence(ch, rho);
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double s = k / 10.0;
      const Mat2 m = leaf.endpoints[0].matrix() * (1.0 - s) + leaf.endpoints[1].matrix() * s;
      worst = std::max(worst, std::abs(concurrence(ch, DensityOperator::from_matrix(m, 1e-10)) - c));
    }
    return worst;
  });
  add("foliation.module_invariance", 1e-10, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng);
    const Leaf a = leaf_through(ch, rho);
    const Leaf b = leaf_through(mix_kraus(ch, random_invertible(rng)), rho);
    if (a.kind != b.kind) return 1.0;
    using namespace roofkit::detail;
    const auto& d1 = a.directions[0];
    const auto& d2 = b.directions[0];
    return std::min(length(minus(d1, d2)), length(plus(d1, d2)));
  });
  add("foliation.decomposition_flatness", 1e-8, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng);
    const PureDecomposition d = optimal_decomposition(ch, rho);
    double e = 0.0;
    for (const auto& m : d.members()) e += m.weight * detail::entropy_of_image(ch, m.state);
    return std::max(d.average_residual(rho), std::abs(e - entanglement_E(ch, rho)));
  });
  add("entanglement.h_via_chi", 1e-6, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    const DensityOperator rho = random_mixed_state(rng);
    const Ensemble e = optimal_decomposition(ch, rho).as_ensemble();
    return std::abs(holevo_chi(e, ch) - entropy_H(ch, rho));
  });
  add("entanglement.h2_lower_bound", 1e-9, n, [](Rng& rng) {
    const KrausPair ch = random_channel(rng);
    return std::max(0.0, -entropy_H(ch, random_mixed_state(rng, 1.0)));
  });
  add("entanglement.capacity_concavity", 1e-9, std::max<std::size_t>(1, n / 10), [](Rng& rng) {
    const double p = rng.uniform(0.05, 0.95);
    double worst = 0.0;
    const double step = 1e-3;
    for (int i = 1; i < 1000; ++i) {
      const double r = i * step;
      const double d2 = amplitude_damping_objective(p, r + step) - 2.0 * amplitude_damping_objective(p, r) +
                        amplitude_damping_objective(p, r - step);
      worst = std::max(worst, d2);
    }
    return worst;
  });
  return rep;
}

}  // namespace roofkit::verify
