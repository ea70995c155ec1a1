#include "fracwave/decay.hpp"

#include <cmath>

#include "fracwave/error.hpp"

namespace fracwave {

DecayFit fit_exponent(std::span<const double> times, std::span<const double> energies,
                      FitWindow window) {
  if (times.size() != energies.size()) throw InvalidArgument("times and energies differ in length");
  if (!(window.t_min >= 1.0)) throw InvalidArgument("fit window must start at t >= 1");
  if (!(window.t_max > window.t_min)) throw InvalidArgument("fit window is empty");
  if (times.empty() || window.t_min < times.front() ||
      window.t_max > times.back() * (1 + 1e-12)) {
    throw InvalidArgument("fit window outside the trajectory time range");
  }

  std::vector<double> log_t, log_e;
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.t_min || times[i] > window.t_max) continue;
    if (!(energies[i] > 0.0) || !std::isfinite(energies[i])) {
      throw DomainError("non-positive energy at t = " + std::to_string(times[i]) +
                        " (solution decayed below floating-point resolution)");
    }
    log_t.push_back(std::log(times[i]));
    log_e.push_back(std::log(energies[i]));
    used.push_back(i);
  }
  if (used.size() < 10) {
    throw InvalidArgument("fit window holds " + std::to_string(used.size()) +
                          " samples; at least 10 are needed");
  }

  const double n = static_cast<double>(used.size());
  double mean_t = 0, mean_e = 0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    mean_t += log_t[i];
    mean_e += log_e[i];
  }
  mean_t /= n;
  mean_e /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    sxx += (log_t[i] - mean_t) * (log_t[i] - mean_t);
    sxy += (log_t[i] - mean_t) * (log_e[i] - mean_e);
  }
  const double slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < used.size(); ++i) {
    const double r = log_e[i] - (mean_e + slope * (log_t[i] - mean_t));
    ss += r * r;
  }

  DecayFit fit;
  fit.window = window;
  fit.exponent = -slope;
  fit.residual = std::sqrt(ss / n);
  fit.samples = used.size();
  fit.compensated.reserve(used.size());
  for (std::size_t i : used) {
    fit.compensated.emplace_back(times[i], std::pow(times[i], fit.exponent) * energies[i]);
  }
  return fit;
}

DecayFit fit_exponent(const Trajectory& traj, FitWindow window) {
  return fit_exponent(traj.times, traj.energies, window);
}

FitWindow default_window(std::span<const double> times, std::span<const double> energies) {
  if (times.size() < 2 || times.size() != energies.size()) {
    throw InvalidArgument("trajectory has fewer than two samples");
  }
  const double floor = 1e-12 * energies.front();
  double t_max = times.back();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (energies[i] < floor) {
      if (i == 0) throw DomainError("initial energy is zero");
      t_max = times[i - 1];
      break;
    }
  }
  return {std::max(1.0, times.back() / 10.0), t_max};
}

FitWindow default_window(const Trajectory& traj) {
  return default_window(traj.times, traj.energies);
}

PredictedRate predicted_exponent(const DampingProfile& profile) {
  PredictedRate rate;
  const auto& report = profile.degeneracy();
  rate.classification = report.classification;
  switch (report.classification) {
    case Classification::kLocalized:
      rate.exponent = 2.0;
      rate.note = "localized damping: E <= C / t^2, sharp";
      break;
    case Classification::kFiniteDegeneracy: {
      const int order = *report.max_order;
      rate.exponent = 2.0 + 1.0 / order;
      rate.approached_from_below = true;
      rate.note = "finite degeneracy N = " + std::to_string(order) +
                  ": E <= C / t^(2 + 1/N - gamma) for every gamma > 0; rate approached from below";
      break;
    }
    case Classification::kStrictlyPositive:
      rate.exponential = true;
      rate.note = "damping bounded below: exponential decay";
      break;
    case Classification::kZero:
      rate.note = "no damping: energy is conserved";
      break;
    case Classification::kIndeterminate:
      throw DomainError("damping zero order could not be determined; no rate predicted");
  }
  return rate;
}

std::vector<std::pair<double, double>> compensated_energy(std::span<const double> times,
                                                          std::span<const double> energies,
                                                          double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("compensation power must be >= 0");
  if (times.size() != energies.size()) throw InvalidArgument("times and energies differ in length");
  std::vector<std::pair<double, double>> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= 0.0) continue;
    out.emplace_back(times[i], std::pow(times[i], p) * energies[i]);
  }
  return out;
}

std::vector<std::pair<double, double>> compensated_energy(const Trajectory& traj, double p) {
  return compensated_energy(traj.times, traj.energies, p);
}

}  // namespace fracwave
