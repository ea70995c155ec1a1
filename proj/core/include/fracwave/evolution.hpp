#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fracwave/damping.hpp"
#include "fracwave/ode.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {

// How the damping enters the second-order equation u_tt + |D| u + B u_t = 0.
enum class DampingModel {
  kMultiplicative,  // B v = chi v
  kHalfWave,        // B v = |D|^{1/2} (chi |D|^{1/2} v)
};

DampingModel parse_damping_model(std::string_view name);
std::string_view to_string(DampingModel model);

// (u, u_t) in mode space.
struct StateVector {
  ModeField u;
  ModeField v;
};

struct SimulationConfig {
  explicit SimulationConfig(DampingProfile damping_profile)
      : damping(std::move(damping_profile)) {}

  DampingProfile damping;
  DampingModel model = DampingModel::kMultiplicative;
  double t_end = 1.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double sample_dt = 1.0;
  bool store_snapshots = false;
  Dealiasing dealiasing = Dealiasing::kNone;

  const GridSpec& spec() const noexcept { return damping.spec(); }

  // Throws InvalidArgument unless t_end > 0, sample_dt > 0 and both
  // tolerances lie in (0, 1e-3].
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> energies;
  // Cumulative energy removed by the damping, Int_0^t D(s) ds.
  std::vector<double> dissipation;
  std::vector<StateVector> snapshots;
  OdeStats stats;
};

// E = ||D|^{1/2} u||^2 + ||v||^2 with dx on [0, 2pi).
double energy(const StateVector& state);

// Instantaneous dissipation -dE/dt: 2 Int chi |v|^2 dx for the multiplicative
// model and 2 Int chi ||D|^{1/2} v|^2 dx for the half-wave model.
double dissipation_rate(const StateVector& state, const SimulationConfig& config);

// (v, -|D| u - B v).
StateVector rhs_eval(const StateVector& state, const SimulationConfig& config);

// Adaptive integration with samples at multiples of sample_dt and at t_end.
// Throws StepSizeUnderflow (a DomainError) when the integrator stalls or the
// state stops being finite.
Trajectory integrate(const StateVector& initial, const SimulationConfig& config);

enum class InitialCondition { kLocalizedHighFreq, kSine, kCustomModes };

InitialCondition parse_initial_condition(std::string_view name);
std::string_view to_string(InitialCondition ic);

struct ModeAmplitude {
  int mode = 0;
  Complex u_hat{};
  Complex v_hat{};
};

// localized-highfreq: u0 = chi3_{1/4}(x + pi) cos(10 x) on [0, 2pi), v0 = 0.
// sine: (sin x, 0). custom-modes: exactly the listed coefficients, which need
// not be Hermitian.
StateVector initial_condition(InitialCondition ic, const GridSpec& spec,
                              std::span<const ModeAmplitude> custom_modes = {});

}  // namespace fracwave
