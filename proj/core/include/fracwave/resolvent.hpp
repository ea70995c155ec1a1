#pragma once

#include <optional>
#include <vector>

#include "fracwave/damping.hpp"
#include "fracwave/resonance.hpp"

namespace fracwave {

// ||P_N(tau)^{-1}|| = 1 / sigma_min(P_N(tau)). The Fourier basis is
// orthonormal for the (1/2pi) Int inner product, so this is the L^2 operator
// norm of the truncated resolvent.
struct ResolventSample {
  Complex tau;
  double sigma_min = 0.0;
  // Empty when sigma_min < 1e-14: tau is at or near a resonance.
  std::optional<double> norm;
  int N = 0;
  // |tau|^2 > N/2: the truncation no longer resolves the modes |n| ~ |tau|^2.
  bool flagged = false;

  bool near_resonance() const noexcept { return !norm.has_value(); }
};

inline constexpr double kResonanceSigmaFloor = 1e-14;

ResolventSample resolvent_norm(const OperatorPencil& pencil, Complex tau);

enum class SweepScale {
  kPhysical,      // sigma_min of P_N(tau)
  kSemiclassical  // h ||P_N(h, 1)^{-1}|| with h = tau^{-2}
};
enum class SweepSpacing { kUniform, kLogarithmic };

struct SweepConfig {
  double tau_min = 1.0;
  double tau_max = 2.0;
  std::size_t steps = 100;
  int N = 64;
  double nu = 1.0;
  SweepScale scale = SweepScale::kPhysical;
  SweepSpacing spacing = SweepSpacing::kLogarithmic;
  // Permit tau_max^2 > N/2; such samples are still flagged.
  bool allow_unreliable = false;
  std::size_t workers = 0;  // 0 uses worker_count()

  // Throws InvalidArgument on an empty or non-positive range, steps < 2, or
  // tau_max^2 > N/2 without allow_unreliable.
  void validate() const;
};

struct SweepSummary {
  double max_norm = 0.0;
  double min_norm = 0.0;
  // Least-squares slope of log norm against log tau.
  double slope = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  std::size_t used = 0;
  std::size_t flagged = 0;
  std::size_t near_resonance = 0;
};

struct SweepResult {
  std::vector<ResolventSample> samples;
  SweepSummary summary;
};

// Samples real tau on the configured grid, in parallel, in index order. The
// summary is computed over unflagged samples with a finite norm; if every
// sample is flagged it falls back to all finite-norm samples.
SweepResult sweep(const DampingProfile& profile, const SweepConfig& config);

// ||P_N(h, z)^{-1}|| for P(h, z) = h |D| - i sqrt(h) z nu chi - z^2, built
// directly. Equals h^{-1} ||P_N(z / sqrt h)^{-1}||. Throws DomainError near a
// resonance and InvalidArgument for h <= 0.
double semiclassical_norm(const DampingProfile& profile, double nu, double h, Complex z, int N);

// ||P(sqrt k) u_k|| / ||u_k|| for u_k = a e^{ikx}, evaluated spectrally on the
// profile grid. Requires k >= 1, matching grids and M >= 8k.
double quasimode_ratio(const DampingProfile& profile, double nu, const DampingProfile& amplitude,
                       int k);

}  // namespace fracwave
