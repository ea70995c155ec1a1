#include "fracwave/resolvent.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

#include "fracwave/error.hpp"
#include "fracwave/parallel.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {
namespace {

constexpr Complex kI{0.0, 1.0};

double smallest_singular_value(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

ResolventSample resolvent_norm(const OperatorPencil& pencil, Complex tau) {
  ResolventSample sample;
  sample.tau = tau;
  sample.N = pencil.N;
  sample.flagged = std::norm(tau) > 0.5 * pencil.N;
  sample.sigma_min = smallest_singular_value(pencil.evaluate(tau));
  if (sample.sigma_min >= kResonanceSigmaFloor) sample.norm = 1.0 / sample.sigma_min;
  return sample;
}

void SweepConfig::validate() const {
  if (!(tau_min > 0.0) || !(tau_max > tau_min) || !std::isfinite(tau_max)) {
    throw InvalidArgument("sweep needs 0 < tau_min < tau_max");
  }
  if (steps < 2) throw InvalidArgument("sweep needs at least 2 steps");
  if (N < 1) throw InvalidArgument("truncation N must be >= 1");
  if (!allow_unreliable && tau_max * tau_max > 0.5 * N) {
    throw InvalidArgument("tau_max^2 = " + std::to_string(tau_max * tau_max) + " exceeds N/2 = " +
                          std::to_string(0.5 * N) +
                          "; raise N or allow truncation-unreliable samples");
  }
}

SweepResult sweep(const DampingProfile& profile, const SweepConfig& config) {
  config.validate();
  const OperatorPencil pencil = build_pencil(profile, config.nu, config.N);

  std::vector<double> taus(config.steps);
  for (std::size_t i = 0; i < config.steps; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(config.steps - 1);
    taus[i] = config.spacing == SweepSpacing::kUniform
                  ? config.tau_min + s * (config.tau_max - config.tau_min)
                  : config.tau_min * std::pow(config.tau_max / config.tau_min, s);
  }
  taus.back() = config.tau_max;

  SweepResult result;
  result.samples.resize(config.steps);
  parallel_for(
      config.steps,
      [&](std::size_t i) {
        const double tau = taus[i];
        if (config.scale == SweepScale::kPhysical) {
          result.samples[i] = resolvent_norm(pencil, tau);
          return;
        }
        // Same pencil data, assembled in the semiclassical variables.
        const double h = 1.0 / (tau * tau);
        Eigen::MatrixXcd p = (-kI * std::sqrt(h)) * pencil.damping;
        p.diagonal().array() += h * pencil.stiffness.array().cast<Complex>() - 1.0;
        ResolventSample s;
        s.tau = tau;
        s.N = config.N;
        s.flagged = tau * tau > 0.5 * config.N;
        s.sigma_min = smallest_singular_value(p) / h;
        if (s.sigma_min >= kResonanceSigmaFloor) s.norm = 1.0 / s.sigma_min;
        result.samples[i] = s;
      },
      config.workers == 0 ? worker_count() : config.workers);

  auto& summary = result.summary;
  for (const auto& s : result.samples) {
    summary.flagged += s.flagged ? 1 : 0;
    summary.near_resonance += s.near_resonance() ? 1 : 0;
  }
  const bool all_flagged = summary.flagged == result.samples.size();
  std::vector<double> log_tau, log_norm;
  bool first = true;
  for (const auto& s : result.samples) {
    if (s.near_resonance() || (s.flagged && !all_flagged)) continue;
    const double tau = s.tau.real();
    if (first) {
      summary.max_norm = summary.min_norm = *s.norm;
      summary.tau_lo = tau;
      first = false;
    }
    summary.max_norm = std::max(summary.max_norm, *s.norm);
    summary.min_norm = std::min(summary.min_norm, *s.norm);
    summary.tau_hi = tau;
    log_tau.push_back(std::log(tau));
    log_norm.push_back(std::log(*s.norm));
  }
  summary.used = log_tau.size();
  if (summary.used >= 2) summary.slope = fit_slope(log_tau, log_norm);
  return result;
}

double semiclassical_norm(const DampingProfile& profile, double nu, double h, Complex z, int N) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("h must be > 0");
  const OperatorPencil pencil = build_pencil(profile, nu, N);
  Eigen::MatrixXcd p = (-kI * std::sqrt(h) * z) * pencil.damping;
  p.diagonal().array() += h * pencil.stiffness.array().cast<Complex>() - z * z;
  const double sigma = smallest_singular_value(p);
  if (sigma < kResonanceSigmaFloor) {
    throw DomainError("semiclassical operator is singular (at or near a resonance)");
  }
  return 1.0 / sigma;
}

double quasimode_ratio(const DampingProfile& profile, double nu, const DampingProfile& amplitude,
                       int k) {
  if (k < 1) throw InvalidArgument("quasimode frequency k must be >= 1");
  const GridSpec& spec = profile.spec();
  if (amplitude.spec() != spec) throw InvalidArgument("amplitude and damping grids differ");
  if (spec.size() < 8 * static_cast<std::size_t>(k)) {
    throw InvalidArgument("grid of " + std::to_string(spec.size()) +
                          " points cannot resolve quasimode k = " + std::to_string(k) +
                          " (needs >= " + std::to_string(8 * k) + ")");
  }
  std::vector<Complex> samples(spec.size());
  const auto a = amplitude.samples().values();
  for (std::size_t j = 0; j < spec.size(); ++j) {
    samples[j] = a[j] * std::polar(1.0, k * spec.point(j));
  }
  const ModeField u = to_modes(spec, samples);
  const double tau = std::sqrt(static_cast<double>(k));

  ModeField pu = apply_fractional_laplacian(u, 1.0);
  ModeField damped = apply_multiplication(profile.samples(), u);
  pu -= Complex(0.0, tau * nu) * damped;
  pu -= Complex(static_cast<double>(k)) * u;
  const double denom = l2_norm(u);
  if (denom == 0.0) throw InvalidArgument("quasimode amplitude is identically zero");
  return l2_norm(pu) / denom;
}

}  // namespace fracwave
