#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracwave/error.hpp"
#include "fracwave/evolution.hpp"
#include "oracles.hpp"

namespace fracwave {
namespace {

constexpr double kPi = oracle::kPi;

ModeField modes_of(const GridSpec& spec, double (*f)(double)) {
  std::vector<double> v(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) v[j] = f(spec.point(j));
  return to_modes(GridField(spec, v));
}

StateVector random_state(const GridSpec& spec, std::mt19937_64& rng, int band) {
  return {to_modes(GridField(spec, oracle::random_smooth(spec.size(), band, rng))),
          to_modes(GridField(spec, oracle::random_smooth(spec.size(), band, rng)))};
}

double max_diff(const ModeField& a, const ModeField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

TEST(DampingModel, ParseAndPrint) {
  EXPECT_EQ(parse_damping_model("multiplicative"), DampingModel::kMultiplicative);
  EXPECT_EQ(parse_damping_model("half-wave"), DampingModel::kHalfWave);
  EXPECT_EQ(to_string(DampingModel::kHalfWave), "half-wave");
  EXPECT_THROW(parse_damping_model("hamiltonian"), InvalidArgument);
}

TEST(Energy, Examples) {
  const GridSpec spec(32);
  const ModeField zero(spec);
  EXPECT_NEAR(energy({modes_of(spec, [](double x) { return std::sin(x); }), zero}), kPi, 1e-14);
  EXPECT_NEAR(energy({modes_of(spec, [](double) { return 2.0; }), zero}), 0.0, 1e-30);
  EXPECT_NEAR(energy({zero, modes_of(spec, [](double x) { return std::cos(x); })}), kPi, 1e-14);
}

TEST(Rhs, Examples) {
  const GridSpec spec(32);
  const ModeField zero(spec);
  const ModeField sine = modes_of(spec, [](double x) { return std::sin(x); });

  SimulationConfig undamped(make_profile(DampingKind::kZero, 0.0, spec));
  const StateVector r = rhs_eval({sine, zero}, undamped);
  EXPECT_LT(max_diff(r.u, zero), 1e-16);
  EXPECT_LT(max_diff(r.v, -1.0 * sine), 1e-15);

  SimulationConfig constant(make_profile(DampingKind::kConstant, 0.3, spec));
  const ModeField one = modes_of(spec, [](double) { return 1.0; });
  const StateVector c = rhs_eval({zero, one}, constant);
  EXPECT_LT(max_diff(c.u, one), 1e-15);
  EXPECT_LT(max_diff(c.v, -0.3 * one), 1e-15);

  SimulationConfig half(make_profile(DampingKind::kConstant, 1.0, spec));
  half.model = DampingModel::kHalfWave;
  ModeField e4(spec);
  e4.set(4, 1.0);
  const StateVector h = rhs_eval({zero, e4}, half);
  EXPECT_LT(std::abs(h.v.at(4) + 4.0), 1e-14);
}

TEST(Rhs, MatchesGridProductOracle) {
  const GridSpec spec(64);
  std::mt19937_64 rng(9);
  SimulationConfig cfg(make_profile(DampingKind::kChi2, 1.0, spec));
  const StateVector s = random_state(spec, rng, 12);
  const StateVector r = rhs_eval(s, cfg);
  // -|n| u_hat - DFT(chi * v) with v synthesised by the naive inverse DFT.
  const auto v = oracle::naive_idft({s.v.data().begin(), s.v.data().end()});
  std::vector<Complex> prod(64);
  for (std::size_t j = 0; j < 64; ++j) prod[j] = cfg.damping.samples()[j] * v[j];
  const auto prod_hat = oracle::naive_dft(prod);
  for (std::size_t k = 0; k < 64; ++k) {
    const int n = oracle::mode_of(k, 64);
    const Complex expected = -static_cast<double>(std::abs(n)) * s.u.data()[k] - prod_hat[k];
    EXPECT_LT(std::abs(r.v.data()[k] - expected), 1e-12);
  }
}

TEST(Dissipation, EqualsMinusEnergyDerivative) {
  // E is quadratic, so the central difference along the flow is exact up to
  // rounding.
  const GridSpec spec(64);
  std::mt19937_64 rng(10);
  for (auto model : {DampingModel::kMultiplicative, DampingModel::kHalfWave}) {
    SimulationConfig cfg(make_profile(DampingKind::kChi3, 0.25, spec));
    cfg.model = model;
    const StateVector s = random_state(spec, rng, 20);
    const StateVector f = rhs_eval(s, cfg);
    const double eps = 1e-4;
    const StateVector plus{s.u + Complex(eps) * f.u, s.v + Complex(eps) * f.v};
    const StateVector minus{s.u - Complex(eps) * f.u, s.v - Complex(eps) * f.v};
    const double dEdt = (energy(plus) - energy(minus)) / (2 * eps);
    const double d = dissipation_rate(s, cfg);
    EXPECT_GT(d, 0.0);
    EXPECT_NEAR(-dEdt, d, 1e-9 * std::abs(d)) << to_string(model);
  }
}

TEST(Integrate, UndampedCosineReturnsNegated) {
  const GridSpec spec(64);
  SimulationConfig cfg(make_profile(DampingKind::kZero, 0.0, spec));
  cfg.t_end = kPi;
  cfg.store_snapshots = true;
  const Trajectory traj = integrate({modes_of(spec, [](double x) { return std::cos(x); }), ModeField(spec)}, cfg);
  const GridField u = to_grid(traj.snapshots.back().u, 1e-8);
  EXPECT_DOUBLE_EQ(traj.times.back(), kPi);
  for (std::size_t j = 0; j < spec.size(); ++j) EXPECT_NEAR(u[j], -std::cos(spec.point(j)), 1e-6);
}

TEST(Integrate, SamplesAtMultiplesOfDtAndEnd) {
  const GridSpec spec(16);
  SimulationConfig cfg(make_profile(DampingKind::kZero, 0.0, spec));
  cfg.t_end = 2.5;
  cfg.sample_dt = 1.0;
  const Trajectory traj = integrate(initial_condition(InitialCondition::kSine, spec), cfg);
  ASSERT_EQ(traj.times.size(), 4u);
  EXPECT_EQ(traj.times[0], 0.0);
  EXPECT_DOUBLE_EQ(traj.times[2], 2.0);
  EXPECT_DOUBLE_EQ(traj.times[3], 2.5);
  EXPECT_EQ(traj.energies.size(), 4u);
  EXPECT_EQ(traj.dissipation.front(), 0.0);
  EXPECT_TRUE(traj.snapshots.empty());
}

TEST(Integrate, ConstantDampingMatchesModalSolution) {
  const GridSpec spec(32);
  const double c = 0.3;
  SimulationConfig cfg(make_profile(DampingKind::kConstant, c, spec));
  cfg.t_end = 10.0;
  cfg.store_snapshots = true;
  std::mt19937_64 rng(12);
  const StateVector s0 = random_state(spec, rng, 6);
  const Trajectory traj = integrate(s0, cfg);
  const StateVector& s = traj.snapshots.back();
  for (int n = -6; n <= 6; ++n) {
    const auto [u, v] = oracle::damped_oscillator(s0.u.at(n), s0.v.at(n), std::abs(n), c, 10.0);
    EXPECT_LT(std::abs(s.u.at(n) - u), 1e-7) << n;
    EXPECT_LT(std::abs(s.v.at(n) - v), 1e-7) << n;
  }
}

TEST(Integrate, EnergyBalanceAndMonotonicity) {
  const GridSpec spec(128);
  for (auto model : {DampingModel::kMultiplicative, DampingModel::kHalfWave}) {
    SimulationConfig cfg(make_profile(DampingKind::kChi1, 0.25, spec));
    cfg.model = model;
    cfg.t_end = 20.0;
    cfg.sample_dt = 0.5;
    const Trajectory traj = integrate(initial_condition(InitialCondition::kLocalizedHighFreq, spec), cfg);
    const double e0 = traj.energies.front();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      EXPECT_NEAR(traj.energies[i] + traj.dissipation[i], e0, 1e-6 * e0);
      if (i > 0) EXPECT_LE(traj.energies[i], traj.energies[i - 1] * (1 + 1e-9));
    }
    EXPECT_LT(traj.energies.back(), 0.9 * e0);
  }
}

TEST(Integrate, ToleranceOrderCheck) {
  const GridSpec spec(64);
  auto final_state = [&](double tol) {
    SimulationConfig cfg(make_profile(DampingKind::kChi2, 1.0, spec));
    cfg.t_end = 5.0;
    cfg.rel_tol = cfg.abs_tol = tol;
    cfg.store_snapshots = true;
    return integrate(initial_condition(InitialCondition::kLocalizedHighFreq, spec), cfg).snapshots.back();
  };
  const StateVector ref = final_state(1e-12);
  auto error = [&](double tol) {
    const StateVector s = final_state(tol);
    return std::max(max_diff(s.u, ref.u), max_diff(s.v, ref.v));
  };
  const double e6 = error(1e-6);
  const double e6h = error(5e-7);
  EXPECT_LT(e6h, e6);
  EXPECT_LT(error(1e-9), e6h);
}

TEST(Integrate, ThreeHalvesMatchesPlainForResolvedData) {
  const GridSpec spec(128);
  auto run = [&](Dealiasing d) {
    SimulationConfig cfg(make_profile(DampingKind::kChi1, 0.25, spec));
    cfg.t_end = 3.0;
    cfg.dealiasing = d;
    cfg.store_snapshots = true;
    return integrate(initial_condition(InitialCondition::kSine, spec), cfg).snapshots.back();
  };
  EXPECT_LT(max_diff(run(Dealiasing::kNone).u, run(Dealiasing::kThreeHalves).u), 1e-8);
}

TEST(SimulationConfig, Validation) {
  SimulationConfig cfg(make_profile(DampingKind::kChi1, 0.25, GridSpec(16)));
  EXPECT_NO_THROW(cfg.validate());
  cfg.t_end = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.t_end = 1.0;
  cfg.rel_tol = 1e-2;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.abs_tol = 1e-9;
  cfg.sample_dt = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.sample_dt = 1.0;
  EXPECT_THROW(integrate({ModeField(GridSpec(32)), ModeField(GridSpec(32))}, cfg), InvalidArgument);
}

TEST(InitialCondition, Sine) {
  const GridSpec spec(32);
  const StateVector s = initial_condition(InitialCondition::kSine, spec);
  EXPECT_LT(std::abs(s.u.at(1) - Complex(0, -0.5)), 1e-15);
  EXPECT_LT(std::abs(s.u.at(-1) - Complex(0, 0.5)), 1e-15);
  EXPECT_EQ(l2_norm(s.v), 0.0);
}

TEST(InitialCondition, LocalizedHighFrequency) {
  const GridSpec spec(512);
  const StateVector s = initial_condition(InitialCondition::kLocalizedHighFreq, spec);
  const GridField u = to_grid(s.u);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double x = spec.point(j);
    const double expected = 0.125 * (std::tanh(20 * (x + 0.25)) - std::tanh(20 * (x - 0.25))) * std::cos(10 * x);
    EXPECT_NEAR(u[j], expected, 1e-14);
  }
  EXPECT_EQ(l2_norm(s.v), 0.0);
  std::vector<double> samples(u.values().begin(), u.values().end());
  const auto reference = oracle::naive_dft(samples);
  for (std::size_t k = 0; k < spec.size(); ++k) EXPECT_LT(std::abs(s.u.data()[k] - reference[k]), 1e-14);
}

TEST(InitialCondition, CustomModesAreTakenVerbatim) {
  const GridSpec spec(32);
  const std::vector<ModeAmplitude> m{{3, Complex(1, 0), Complex(0, 0)}, {-2, Complex(0, 1), Complex(2, 0)}};
  const StateVector s = initial_condition(InitialCondition::kCustomModes, spec, m);
  EXPECT_EQ(s.u.at(3), Complex(1, 0));
  EXPECT_EQ(s.u.at(-3), Complex(0, 0));
  EXPECT_EQ(s.u.at(-2), Complex(0, 1));
  EXPECT_EQ(s.v.at(-2), Complex(2, 0));
  const std::vector<ModeAmplitude> outside{{40, Complex(1.0), Complex(0.0)}};
  EXPECT_THROW(initial_condition(InitialCondition::kCustomModes, spec, outside), InvalidArgument);
}

TEST(InitialCondition, Parse) {
  EXPECT_EQ(parse_initial_condition("localized-highfreq"), InitialCondition::kLocalizedHighFreq);
  EXPECT_EQ(parse_initial_condition("sine"), InitialCondition::kSine);
  EXPECT_EQ(parse_initial_condition("custom-modes"), InitialCondition::kCustomModes);
  EXPECT_THROW(parse_initial_condition("gaussian"), InvalidArgument);
}

}  // namespace
}  // namespace fracwave
