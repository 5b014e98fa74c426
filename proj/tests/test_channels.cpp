#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "roofkit/channels.hpp"
#include "roofkit/random.hpp"

using namespace roofkit;

TEST(KrausPair, LengthTwoDetection) {
  EXPECT_TRUE(KrausPair(Mat2::identity(), Mat2::pauli(1)).is_length_two());
  EXPECT_FALSE(KrausPair(Mat2::identity(), Mat2::identity() * cplx(0, 3)).is_length_two());
  EXPECT_FALSE(KrausPair(Mat2::identity(), Mat2::zero()).is_length_two());
}

TEST(KrausPair, RejectsNonFinite) { EXPECT_THROW(KrausPair(Mat2::diag(NAN, 1.0), Mat2::zero()), domain_error); }

TEST(ApplyChannel, AmplitudeDamping) {
  const double p = 0.3;
  const auto rho = DensityOperator::from_matrix({{0.6, cplx(0.2, -0.1), cplx(0.2, 0.1), 0.4}});
  const auto out = apply_channel(amplitude_damping{p}, rho).matrix();
  EXPECT_NEAR(out(0, 0).real(), 0.6 + 0.7 * 0.4, 1e-15);
  EXPECT_NEAR(out(1, 1).real(), 0.3 * 0.4, 1e-15);
  EXPECT_LT(std::abs(out(0, 1) - std::sqrt(0.3) * cplx(0.2, -0.1)), 1e-15);
  // Kraus route agrees with the named action.
  EXPECT_LT(max_abs_diff(apply_channel(kraus_of(amplitude_damping{p}), rho).matrix(), out), 1e-15);
}

TEST(ApplyChannel, PhaseDamping) {
  const cplx z(0.3, 0.4);
  const auto rho = DensityOperator::from_matrix({{0.6, cplx(0.2, -0.1), cplx(0.2, 0.1), 0.4}});
  const auto out = apply_channel(phase_damping{z}, rho).matrix();
  EXPECT_NEAR(out(0, 0).real(), 0.6, 1e-15);
  EXPECT_NEAR(out(1, 1).real(), 0.4, 1e-15);
  EXPECT_LT(std::abs(out(0, 1) - z * cplx(0.2, -0.1)), 1e-15);
  EXPECT_LT(max_abs_diff(apply_channel(kraus_of(phase_damping{z}), rho).matrix(), out), 1e-15);
}

TEST(ApplyChannel, IdentityLikePair) {
  const KrausPair ch(Mat2::identity() * std::sqrt(0.5), Mat2::pauli(1) * std::sqrt(0.5));
  const auto out = apply_channel(ch, DensityOperator::from_matrix(Mat2::diag(1.0, 0.0)));
  EXPECT_LT(max_abs_diff(out.matrix(), Mat2::diag(0.5, 0.5)), 1e-15);
}

TEST(ApplyChannel, RequiresTracePreservation) {
  const KrausPair ch(Mat2::identity(), Mat2::pauli(1));
  EXPECT_THROW(apply_channel(ch, DensityOperator::maximally_mixed()), domain_error);
}

TEST(ApplyChannel, RandomChannelsKeepStatesValid) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const KrausPair ch = random_channel(rng);
    ASSERT_TRUE(ch.is_trace_preserving());
    const auto out = apply_channel(ch, random_mixed_state(rng));
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(out.det(), -1e-12);
  }
}

TEST(KrausOf, NamedRealizations) {
  const double p = 0.36;
  const KrausPair ad = kraus_of(amplitude_damping{p});
  EXPECT_LT(max_abs_diff(ad.A(), Mat2::diag(1.0, 0.6)), 1e-15);
  EXPECT_LT(max_abs_diff(ad.B(), Mat2::antidiag(0.8, 0.0)), 1e-15);

  const KrausPair pd = kraus_of(phase_damping{0.0});
  EXPECT_LT(max_abs_diff(pd.A(), Mat2::diag(1.0, 0.0)), 1e-15);
  EXPECT_LT(max_abs_diff(pd.B(), Mat2::diag(0.0, 1.0)), 1e-15);

  const cplx z(0.3, 0.4);
  const KrausPair pdz = kraus_of(phase_damping{z});
  EXPECT_EQ(pdz.A(), Mat2::diag(1.0, std::conj(z)));
  EXPECT_TRUE(pdz.is_trace_preserving());

  const canonical_form c{0.8, 0.6, 0.8, 0.6};
  const KrausPair cf = kraus_of(c);
  EXPECT_EQ(cf.A(), Mat2::diag(0.8, 0.6));
  EXPECT_EQ(cf.B(), Mat2::antidiag(0.8, 0.6));
  EXPECT_TRUE(cf.is_trace_preserving());
}

TEST(Validate, RangeChecks) {
  EXPECT_THROW(validate(phase_damping{1.0}), domain_error);
  EXPECT_THROW(validate(phase_damping{cplx(0.8, 0.8)}), domain_error);
  EXPECT_THROW(validate(amplitude_damping{0.0}), domain_error);
  EXPECT_THROW(validate(amplitude_damping{1.5}), domain_error);
  EXPECT_NO_THROW(validate(amplitude_damping{1.0}));
  EXPECT_THROW(validate(canonical_form{0.8, 0.6, 0.8, 0.5}), domain_error);
  EXPECT_THROW(validate(kraus_channel{KrausPair(Mat2::identity(), Mat2::identity())}), domain_error);
  // Trace preservation is checked where a channel is applied, not here.
  EXPECT_NO_THROW(validate(kraus_channel{KrausPair(Mat2::identity(), Mat2::pauli(1))}));
}

TEST(Ensemble, Invariants) {
  const auto z = DensityOperator::from_matrix(Mat2::diag(1.0, 0.0));
  EXPECT_THROW(Ensemble({}), domain_error);
  EXPECT_THROW(Ensemble({{0.5, z}, {0.4, z}}), domain_error);
  EXPECT_THROW(Ensemble({{1.5, z}, {-0.5, z}}), domain_error);
  std::vector<Ensemble::member> many(17, {1.0 / 17.0, z});
  EXPECT_THROW(Ensemble{many}, domain_error);
  EXPECT_NO_THROW(Ensemble(many, 32));
}

TEST(HolevoChi, Examples) {
  const auto k0 = DensityOperator::from_matrix(Mat2::diag(1.0, 0.0));
  const auto k1 = DensityOperator::from_matrix(Mat2::diag(0.0, 1.0));
  const Ensemble e({{0.5, k0}, {0.5, k1}});
  EXPECT_NEAR(holevo_chi(e), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(holevo_chi(e, std::nullopt, entropy_unit::bits), 1.0, 1e-15);
  EXPECT_EQ(holevo_chi(Ensemble({{1.0, DensityOperator::maximally_mixed()}})), 0.0);
  // h(1/4) - ln(2)/2
  const double expected = -0.25 * std::log(0.25) - 0.75 * std::log(0.75) - 0.5 * std::log(2.0);
  EXPECT_NEAR(holevo_chi(e, kraus_of(amplitude_damping{0.5})), expected, 1e-15);
  EXPECT_NEAR(expected, 0.2157615543388357, 1e-15);
}

TEST(HolevoChi, DataProcessing) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    std::vector<Ensemble::member> m;
    const int n = 2 + static_cast<int>(rng.next() % 3);
    double total = 0.0;
    std::vector<double> w(n);
    for (auto& x : w) total += (x = rng.uniform(0.05, 1.0));
    for (int j = 0; j < n; ++j) m.push_back({w[j] / total, random_mixed_state(rng)});
    double s = 0.0;
    for (auto& x : m) s += x.weight;
    m.back().weight += 1.0 - s;
    const Ensemble e(std::move(m));
    EXPECT_LE(holevo_chi(e, random_channel(rng)), holevo_chi(e) + 1e-9);
  }
}
