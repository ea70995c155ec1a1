#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracwave/spectral.hpp"

namespace fracwave {

enum class DampingKind { kChi1, kChi2, kChi3, kConstant, kZero, kCustom };

// Parsing accepts "chi1", "chi2", "chi3", "constant", "zero", "custom".
DampingKind parse_damping_kind(std::string_view name);
std::string_view to_string(DampingKind kind);

enum class Classification {
  kLocalized,         // vanishes on an interval of >= 3 grid points
  kFiniteDegeneracy,  // finitely many zeros, each of finite even order
  kStrictlyPositive,  // no zeros
  kZero,              // identically zero
  kIndeterminate,     // a zero whose order could not be fitted
};

std::string_view to_string(Classification c);

struct DampingZero {
  double location = 0.0;
  // Half the fitted vanishing exponent; empty when the slope is further than
  // 0.25 from an even integer.
  std::optional<int> order;
  double fitted_slope = 0.0;
  double fit_residual = 0.0;
};

struct DegeneracyReport {
  std::vector<DampingZero> zeros;
  Classification classification = Classification::kStrictlyPositive;
  std::optional<int> max_order;
  // Length of the longest run of consecutive grid points below threshold.
  std::size_t longest_vanishing_run = 0;
};

struct ZeroDetectionOptions {
  // Relative to max chi.
  double threshold = 1e-12;
  // Points used on each side of a zero, excluding the zero itself.
  std::size_t fit_points = 8;
};

// A nonnegative damping function sampled on a grid, with cached Fourier data
// and zero structure. Immutable after construction.
class DampingProfile {
 public:
  DampingProfile(DampingKind kind, double nu, GridField samples,
                 const ZeroDetectionOptions& options = {});

  DampingKind kind() const noexcept { return kind_; }
  double nu() const noexcept { return nu_; }
  const GridSpec& spec() const noexcept { return samples_.spec(); }
  const GridField& samples() const noexcept { return samples_; }
  const ModeField& fourier() const noexcept { return fourier_; }

  // chi_hat(n) for |n| <= M/2; the Nyquist coefficient is returned for both
  // signs. Throws InvalidArgument outside that range.
  Complex fourier_coefficient(int n) const;

  const DegeneracyReport& degeneracy() const noexcept { return degeneracy_; }
  Classification classification() const noexcept { return degeneracy_.classification; }

 private:
  DampingKind kind_;
  double nu_;
  GridField samples_;
  ModeField fourier_;
  DegeneracyReport degeneracy_;
};

// Closed forms of the built-in families at amplitude nu:
//   chi1 = nu cos^2 x,  chi2 = nu exp(-2 (x - pi)^2),
//   chi3 = (nu/2) [tanh(20 (x - pi + 1/4)) - tanh(20 (x - pi - 1/4))],
// constant = nu, zero = 0. Throws InvalidArgument for kCustom.
double closed_form(DampingKind kind, double nu, double x);

// Throws InvalidArgument for nu < 0, non-finite nu, or kind == kCustom.
DampingProfile make_profile(DampingKind kind, double nu, const GridSpec& spec);

// Wraps arbitrary samples. Rejects samples below -1e-12 * max(1, max chi).
DampingProfile make_custom_profile(GridField samples);

// Reads two-column "x,chi" rows sampled uniformly on [0, 2pi) and resamples
// them onto `spec` with the trigonometric interpolant. Lines starting with '#'
// and a non-numeric header row are skipped.
DampingProfile load_profile_csv(const std::filesystem::path& path, const GridSpec& spec);
GridField trigonometric_resample(std::span<const double> x, std::span<const double> values,
                                 const GridSpec& spec);

DegeneracyReport detect_zeros_degeneracy(const GridField& samples,
                                         const ZeroDetectionOptions& options = {});
inline DegeneracyReport detect_zeros_degeneracy(const DampingProfile& profile,
                                                const ZeroDetectionOptions& options = {}) {
  return detect_zeros_degeneracy(profile.samples(), options);
}

// a(x) = exp(1 - 1 / (1 - r^2)) with r = dist(x, center) / radius, using the
// periodic distance on the circle; zero for r >= 1. Requires 0 < radius < pi.
DampingProfile bump_function(double center, double radius, const GridSpec& spec);

}  // namespace fracwave
