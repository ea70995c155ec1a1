#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

#include "fracwave/damping.hpp"

namespace fracwave {

// Fourier truncation of the stationary family to modes |n| <= N:
//   P_N(tau) = A - i tau X - tau^2 I,  A = diag(|n|),  X[n, l] = nu chi_hat(n - l).
// Rows and columns are indexed by n + N.
struct OperatorPencil {
  int N = 0;
  double nu = 0.0;
  Eigen::VectorXd stiffness;
  Eigen::MatrixXcd damping;

  Eigen::Index dimension() const noexcept { return 2 * N + 1; }
  Eigen::MatrixXcd evaluate(Complex tau) const;
};

// Uses nu * chi_hat of the profile. Needs the profile grid to resolve
// |n| <= 2N, i.e. M >= 4N; throws InvalidArgument otherwise or for N < 1.
OperatorPencil build_pencil(const DampingProfile& profile, double nu, int N);

enum class ResonanceMethod { kPencil, kAsymptotic, kExactFormula };
std::string_view to_string(ResonanceMethod method);

struct ResonanceSet {
  int N = 0;
  double nu = 0.0;
  ResonanceMethod method = ResonanceMethod::kPencil;
  std::vector<Complex> values;
};

// All 2(2N + 1) eigenvalues of the companion matrix [[0, I], [A, -iX]],
// counted with multiplicity, sorted by (Re, Im). Throws DomainError if the
// eigen-solver does not converge.
ResonanceSet pencil_resonances(const OperatorPencil& pencil);

// First-order small-nu expansion near sqrt(k), 1 <= k <= k_max:
//   sqrt(k) - i nu (chi_hat(0) +- |chi_hat(2k)|) / 2,
// together with the mirrored values -conj(tau).
ResonanceSet asymptotic_resonances(const DampingProfile& profile, double nu, int k_max);

// Exact resonances of +-hD - i sqrt(h) z chi - z^2: roots of
// z^2 + i z sqrt(h) chi_hat(0) - h k = 0 for |k| <= k_max. Only chi_hat(0)
// enters. Requires h > 0.
ResonanceSet transport_resonances(const DampingProfile& profile, double h, int k_max = 12);
ResonanceSet transport_resonances(Complex mean_damping, double h, int k_max = 12);

// Roots of tau^2 + i c tau - |n| = 0 for |n| <= N: the exact pencil spectrum
// for constant damping chi = c.
ResonanceSet constant_damping_resonances(double c, int N);

struct ComplexRegion {
  double re_min = -1e300, re_max = 1e300;
  double im_min = -1e300, im_max = 1e300;
  bool contains(Complex z) const noexcept {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
};

// One pairing (a, b); an empty side marks an unpaired member.
struct ResonanceMatch {
  std::optional<Complex> a;
  std::optional<Complex> b;
  double distance = 0.0;  // |a - b|; 0 when unpaired
  bool paired() const noexcept { return a && b; }
};

// Greedy nearest-neighbour pairing of the members of a and b inside region,
// closest pairs first.
std::vector<ResonanceMatch> match_resonances(const ResonanceSet& a, const ResonanceSet& b,
                                             const ComplexRegion& region);

// The Re tau >= 0 representative of each {tau, -conj(tau)} pair.
ResonanceSet right_half_plane(const ResonanceSet& set, double tolerance = 1e-10);

// Largest distance from -conj(tau) to the nearest member, over members tau.
double reflection_defect(const ResonanceSet& set);

// Member of smallest |Im| among those with |tau| > zero_tolerance.
std::optional<Complex> slowest_nonzero(const ResonanceSet& set, double zero_tolerance = 1e-8);

}  // namespace fracwave
