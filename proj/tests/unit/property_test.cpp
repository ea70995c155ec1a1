// Randomised invariants over seeded inputs.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracwave/decay.hpp"
#include "fracwave/evolution.hpp"
#include "fracwave/resolvent.hpp"
#include "fracwave/resonance.hpp"
#include "oracles.hpp"

namespace fracwave {
namespace {

class Seeded : public ::testing::TestWithParam<int> {
 protected:
  std::mt19937_64 rng{static_cast<std::uint64_t>(GetParam())};
};

GridField random_damping(const GridSpec& spec, std::mt19937_64& rng, int band) {
  auto v = oracle::random_smooth(spec.size(), band, rng);
  for (double& x : v) x = 0.1 * x * x;
  return GridField(spec, v);
}

TEST_P(Seeded, RealFieldsAreHermitianAndRoundtrip) {
  const GridSpec spec(128);
  const auto f = oracle::random_smooth(128, 40, rng);
  const ModeField m = to_modes(GridField(spec, f));
  EXPECT_LT(hermitian_defect(m), 1e-12);
  const GridField back = to_grid(m);
  for (std::size_t j = 0; j < 128; ++j) EXPECT_NEAR(back[j], f[j], 1e-12);
}

TEST_P(Seeded, FractionalPowersCompose) {
  const GridSpec spec(64);
  const ModeField m = to_modes(GridField(spec, oracle::random_smooth(64, 20, rng)));
  std::uniform_real_distribution<double> u(0.0, 1.5);
  const double a = u(rng), b = u(rng);
  const ModeField lhs = apply_fractional_laplacian(apply_fractional_laplacian(m, a), b);
  const ModeField rhs = apply_fractional_laplacian(m, a + b);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_LT(std::abs(lhs.data()[k] - rhs.data()[k]), 1e-12);
}

TEST_P(Seeded, EnergyIsNonIncreasingWithNonNegativeDamping) {
  const GridSpec spec(64);
  SimulationConfig cfg(make_custom_profile(random_damping(spec, rng, 4)));
  cfg.t_end = 15.0;
  cfg.sample_dt = 0.25;
  const StateVector s{to_modes(GridField(spec, oracle::random_smooth(64, 10, rng))),
                      to_modes(GridField(spec, oracle::random_smooth(64, 10, rng)))};
  const Trajectory t = integrate(s, cfg);
  for (std::size_t i = 1; i < t.energies.size(); ++i) {
    EXPECT_LE(t.energies[i], t.energies[i - 1] * (1 + 1e-9));
    EXPECT_NEAR(t.energies[i] + t.dissipation[i], t.energies[0], 1e-6 * t.energies[0]);
  }
}

TEST_P(Seeded, PencilIsHermitianAndSpectrumReflectionSymmetric) {
  const GridSpec spec(64);
  const DampingProfile p = make_custom_profile(random_damping(spec, rng, 5));
  const OperatorPencil pen = build_pencil(p, 1.0, 10);
  EXPECT_LT((pen.damping - pen.damping.adjoint()).norm(), 1e-14);
  const ResonanceSet set = pencil_resonances(pen);
  EXPECT_LT(reflection_defect(set), 1e-9);
  for (const Complex& z : set.values) EXPECT_LE(z.imag(), 1e-9);
}

TEST_P(Seeded, TransportResonancesLieOnTheLines) {
  std::uniform_real_distribution<double> u(0.01, 2.0);
  const double mean = u(rng), h = u(rng);
  for (const Complex& z : transport_resonances(Complex(mean), h, 20).values) {
    const double off_axis = std::abs(z.real());
    const double off_line = std::abs(z.imag() + mean * std::sqrt(h) / 2);
    EXPECT_LT(std::min(off_axis, off_line), 1e-12);
  }
}

TEST_P(Seeded, SemiclassicalScalingIdentity) {
  const GridSpec spec(128);
  const DampingProfile p = make_custom_profile(random_damping(spec, rng, 6));
  std::uniform_real_distribution<double> u(0.05, 0.9);
  const double h = u(rng);
  const Complex z(u(rng) + 0.3, -0.05 * u(rng));
  const double lhs = h * semiclassical_norm(p, 0.5, h, z, 24);
  const auto rhs = resolvent_norm(build_pencil(p, 0.5, 24), z / std::sqrt(h));
  ASSERT_TRUE(rhs.norm.has_value());
  EXPECT_NEAR(lhs, *rhs.norm, 1e-10 * *rhs.norm);
}

TEST_P(Seeded, FitExponentIsScaleInvariant) {
  std::uniform_real_distribution<double> u(0.5, 4.0);
  const double p = u(rng), c = u(rng);
  std::vector<double> t, e, ce;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(i);
    e.push_back(std::pow(1.0 + i, -p) * (1 + 0.05 * std::sin(i)));
    ce.push_back(c * e.back());
  }
  EXPECT_NEAR(fit_exponent(t, e, {20, 200}).exponent, fit_exponent(t, ce, {20, 200}).exponent, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, Seeded, ::testing::Range(1, 6));

}  // namespace
}  // namespace fracwave
