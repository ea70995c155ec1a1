#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracwave/damping.hpp"
#include "fracwave/evolution.hpp"

namespace fracwave {

struct FitWindow {
  double t_min = 1.0;
  double t_max = 1.0;
};

// E(t) ~ C t^{-exponent} over a window, from a least-squares line through
// (log t, log E).
struct DecayFit {
  FitWindow window;
  double exponent = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
  std::size_t samples = 0;
  // (t, t^exponent E(t)) over the window.
  std::vector<std::pair<double, double>> compensated;
};

// Requires t_min >= 1, t_min < t_max, at least 10 samples in the window and
// strictly positive energies there (DomainError otherwise).
DecayFit fit_exponent(std::span<const double> times, std::span<const double> energies,
                      FitWindow window);
DecayFit fit_exponent(const Trajectory& traj, FitWindow window);

// The last decade of simulated time, [max(1, t_end / 10), t_end], cut short
// before the first sample with E < 1e-12 E(0).
FitWindow default_window(const Trajectory& traj);
FitWindow default_window(std::span<const double> times, std::span<const double> energies);

struct PredictedRate {
  Classification classification = Classification::kZero;
  // Polynomial exponent p in E <= C t^{-p}; empty for exponential decay or
  // for chi = 0 (no decay).
  std::optional<double> exponent;
  bool exponential = false;
  // Finite degeneracy: every p' < exponent is proven, exponent itself is not.
  bool approached_from_below = false;
  std::string note;
};

// localized -> 2, finite degeneracy with max order N -> 2 + 1/N,
// strictly positive -> exponential. Throws DomainError for an indeterminate
// classification.
PredictedRate predicted_exponent(const DampingProfile& profile);

// (t, t^p E(t)) for every sample with t > 0. Requires p >= 0.
std::vector<std::pair<double, double>> compensated_energy(std::span<const double> times,
                                                          std::span<const double> energies,
                                                          double p);
std::vector<std::pair<double, double>> compensated_energy(const Trajectory& traj, double p);

}  // namespace fracwave
