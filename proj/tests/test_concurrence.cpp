#include <gtest/gtest.h>

#include <cmath>

#include "roofkit/concurrence.hpp"
#include "roofkit/random.hpp"

using namespace roofkit;

namespace {
DensityOperator ket(Vec2 v) { return DensityOperator::pure(v); }
}  // namespace

TEST(ConcurrencePure, Examples) {
  EXPECT_NEAR(concurrence_pure(kraus_of(amplitude_damping{0.5}), ket({0.0, 1.0})), 1.0, 1e-15);
  // |0> is a fixed point of amplitude damping: pure output, C = 0.
  EXPECT_EQ(concurrence_pure(kraus_of(amplitude_damping{0.5}), ket({1.0, 0.0})), 0.0);
  const cplx z(0.3, 0.4);
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const auto pi = random_pure_state(rng);
    const BlochVector b = pi.bloch();
    const double expected = std::sqrt(1.0 - std::norm(z)) * std::hypot(b.x1, b.x2);
    EXPECT_NEAR(concurrence_pure(kraus_of(phase_damping{z}), pi), expected, 1e-12);
  }
  EXPECT_THROW(concurrence_pure(kraus_of(phase_damping{z}), DensityOperator::maximally_mixed()), domain_error);
}

TEST(ConcurrenceTheta, Examples) {
  Rng rng(2);
  const auto rho = random_mixed_state(rng);
  EXPECT_EQ(concurrence_theta(AntilinearHermitian::zero(), rho), 0.0);
  const auto swap = AntilinearHermitian::from_alpha(Mat2::antidiag(1.0, 1.0));
  EXPECT_EQ(concurrence_theta(swap, DensityOperator::maximally_mixed()), 0.0);
  for (int k = 0; k < 50; ++k) {
    const auto t = theta_from_kraus(random_kraus_pair(rng));
    const Vec2 a = random_unit_vector(rng);
    EXPECT_NEAR(concurrence_theta(t, ket(a)), std::abs(pure_expectation(t, a)), 1e-10);
  }
}

TEST(ConcurrenceTheta, AgreesWithSpectralRoute) {
  Rng rng(3);
  for (int k = 0; k < 300; ++k) {
    const auto t = theta_from_kraus(random_channel(rng));
    const auto rho = random_mixed_state(rng);
    EXPECT_NEAR(concurrence_theta(t, rho), concurrence_spectral(t, rho), 1e-7);
  }
}

TEST(ConcurrenceTheta, BoundedForChannels) {
  Rng rng(4);
  for (int k = 0; k < 300; ++k) {
    const auto rho = rng.uniform() < 0.3 ? random_pure_state(rng) : random_mixed_state(rng);
    const double c = concurrence(random_channel(rng), rho);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-9);
  }
}

TEST(ConcurrenceTheta, Convexity) {
  Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    const KrausPair ch = random_channel(rng);
    const auto ra = random_mixed_state(rng, 1.0);
    const auto rb = random_mixed_state(rng, 1.0);
    const double t = rng.uniform();
    const auto mix = DensityOperator::from_matrix(ra.matrix() * t + rb.matrix() * (1.0 - t), 1e-10);
    EXPECT_LE(concurrence(ch, mix), t * concurrence(ch, ra) + (1.0 - t) * concurrence(ch, rb) + 1e-10);
  }
}

TEST(ConcurrenceCanonical, AmplitudeDampingForm) {
  const double p = 0.3;
  const canonical_form c{1.0, std::sqrt(p), std::sqrt(1.0 - p), 0.0};
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const auto rho = random_mixed_state(rng);
    EXPECT_NEAR(concurrence_canonical(c, rho), 2.0 * std::sqrt(p * (1.0 - p)) * rho.p11(), 1e-12);
  }
}

TEST(ConcurrenceCanonical, SymmetricEntries) {
  const double s = std::sqrt(0.5);
  const ChannelSpec c = canonical_form{s, s, s, s};
  const auto rho = DensityOperator::from_matrix({{0.5, 0.25, 0.25, 0.5}});
  EXPECT_NEAR(concurrence_canonical(c, rho), concurrence_theta(theta_of(c), rho), 1e-12);
}

TEST(ConcurrenceCanonical, AgreesWithThetaOnRandomForms) {
  Rng rng(7);
  for (int k = 0; k < 300; ++k) {
    const double t0 = rng.uniform(0.0, 1.5707963267948966);
    const double t1 = rng.uniform(0.0, 1.5707963267948966);
    auto ph = [&] { return std::polar(1.0, rng.uniform(-3.14159, 3.14159)); };
    const ChannelSpec c = canonical_form{std::cos(t0) * ph(), std::cos(t1) * ph(), std::sin(t1) * ph(), std::sin(t0) * ph()};
    const auto rho = random_mixed_state(rng);
    EXPECT_NEAR(concurrence_canonical(c, rho), concurrence_theta(theta_of(c), rho), 1e-10);
  }
}

TEST(ConcurrenceCanonical, ZeroLine) {
  // a00 = a11 = b01 = b10: zero concurrence on a = (1, +-1)/sqrt(2)
  const double s = std::sqrt(0.5);
  const canonical_form c{s, s, s, s};
  EXPECT_EQ(concurrence_canonical(c, ket({1.0, 1.0})), 0.0);
  EXPECT_EQ(concurrence_canonical(c, ket({1.0, -1.0})), 0.0);
  EXPECT_THROW(concurrence_canonical(amplitude_damping{0.5}, DensityOperator::maximally_mixed()), domain_error);
}

TEST(ConcurrenceNamed, Examples) {
  EXPECT_NEAR(concurrence_named(phase_damping{0.6}, density_from_bloch({0.6, 0.0, 0.0})), 0.48, 1e-15);
  EXPECT_NEAR(concurrence_named(phase_damping{0.6}, density_from_bloch({0.6, 0.0, 0.7})), 0.48, 1e-15);
  EXPECT_EQ(concurrence_named(phase_damping{cplx(0.2, 0.7)}, density_from_bloch({0.0, 0.0, 0.3})), 0.0);
  EXPECT_NEAR(concurrence_named(amplitude_damping{0.5}, DensityOperator::maximally_mixed()), 0.5, 1e-15);
  EXPECT_THROW(concurrence_named(canonical_form{1.0, 1.0, 0.0, 0.0}, DensityOperator::maximally_mixed()),
               domain_error);
}

TEST(ConcurrenceNamed, AgreesWithTheta) {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const ChannelSpec pd = phase_damping{std::polar(rng.uniform(0.0, 0.99), rng.uniform(-3.0, 3.0))};
    const ChannelSpec ad = amplitude_damping{rng.uniform(0.01, 1.0)};
    const auto rho = random_mixed_state(rng);
    for (const auto& spec : {pd, ad}) {
      const auto r = concurrence(spec, rho);
      EXPECT_EQ(r.method, concurrence_method::named_closed_form);
      EXPECT_NEAR(r.value, r.theta_value, 1e-10);
    }
  }
}

TEST(Concurrence, DispatchAndNoiselessLimit) {
  const auto rho = DensityOperator::maximally_mixed();
  EXPECT_EQ(concurrence(amplitude_damping{1.0}, rho).value, 0.0);
  EXPECT_EQ(concurrence(amplitude_damping{1.0}, rho).theta_value, 0.0);
  EXPECT_EQ(concurrence(canonical_form{0.8, 0.6, 0.8, 0.6}, rho).method, concurrence_method::canonical);
  const ChannelSpec k = kraus_channel{kraus_of(amplitude_damping{0.5})};
  const auto r = concurrence(k, rho);
  EXPECT_EQ(r.method, concurrence_method::theta);
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  EXPECT_EQ(method_name(concurrence_method::named_closed_form), "named-closed-form");
  EXPECT_EQ(method_name(concurrence_method::canonical), "canonical");
  EXPECT_EQ(method_name(concurrence_method::theta), "theta");
}

TEST(Concurrence, InvariantUnderModuleChange) {
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const KrausPair ch = random_channel(rng);
    const Mat2 u = random_unitary(rng);
    const auto rho = random_mixed_state(rng);
    EXPECT_NEAR(concurrence(ch, rho), concurrence(mix_kraus(ch, u), rho), 1e-12);
  }
}
