#include "fracwave/resonance.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracwave/error.hpp"

namespace fracwave {
namespace {

constexpr Complex kI{0.0, 1.0};

bool lexicographic(const Complex& a, const Complex& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// Both roots of z^2 + i b z - c = 0 with real b, c. Splitting the cases keeps
// purely imaginary roots exactly on the imaginary axis and the others exactly
// on Im z = -b/2.
std::pair<Complex, Complex> damped_quadratic_roots(double b, double c) {
  const double disc = c - 0.25 * b * b;
  if (disc >= 0.0) {
    const double re = std::sqrt(disc);
    return {Complex(re, -0.5 * b), Complex(-re, -0.5 * b)};
  }
  const double im = std::sqrt(-disc);
  return {Complex(0.0, -0.5 * b + im), Complex(0.0, -0.5 * b - im)};
}

}  // namespace

Eigen::MatrixXcd OperatorPencil::evaluate(Complex tau) const {
  Eigen::MatrixXcd p = (-kI * tau) * damping;
  p.diagonal().array() += stiffness.array().cast<Complex>() - tau * tau;
  return p;
}

OperatorPencil build_pencil(const DampingProfile& profile, double nu, int N) {
  if (N < 1) throw InvalidArgument("truncation order N must be >= 1");
  if (!std::isfinite(nu) || nu < 0.0) throw InvalidArgument("nu must be finite and >= 0");
  const int available = static_cast<int>(profile.spec().size() / 2);
  if (2 * N > available) {
    throw InvalidArgument("truncation N = " + std::to_string(N) + " needs a grid of at least " +
                          std::to_string(4 * N) + " points, profile has " +
                          std::to_string(profile.spec().size()));
  }
  OperatorPencil pencil;
  pencil.N = N;
  pencil.nu = nu;
  const Eigen::Index d = 2 * N + 1;
  pencil.stiffness.resize(d);
  pencil.damping.resize(d, d);
  std::vector<Complex> band(static_cast<std::size_t>(2 * N + 1));
  for (int m = 0; m <= 2 * N; ++m) band[static_cast<std::size_t>(m)] = nu * profile.fourier_coefficient(m);
  // Real damping: the main diagonal is real and X is Hermitian by construction.
  band[0] = band[0].real();
  for (int n = -N; n <= N; ++n) {
    pencil.stiffness(n + N) = std::abs(n);
    for (int l = -N; l <= N; ++l) {
      const int m = n - l;
      const Complex c = band[static_cast<std::size_t>(std::abs(m))];
      pencil.damping(n + N, l + N) = m >= 0 ? c : std::conj(c);
    }
  }
  return pencil;
}

std::string_view to_string(ResonanceMethod method) {
  switch (method) {
    case ResonanceMethod::kPencil: return "pencil";
    case ResonanceMethod::kAsymptotic: return "asymptotic";
    case ResonanceMethod::kExactFormula: return "exact-formula";
  }
  return "unknown";
}

ResonanceSet pencil_resonances(const OperatorPencil& pencil) {
  const Eigen::Index d = pencil.dimension();
  // tau z1 = z2, tau z2 = A z1 - i X z2.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  companion.topRightCorner(d, d).setIdentity();
  companion.bottomLeftCorner(d, d).diagonal() = pencil.stiffness.cast<Complex>();
  companion.bottomRightCorner(d, d) = -kI * pencil.damping;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw DomainError("companion eigen-solve did not converge (N = " + std::to_string(pencil.N) +
                      ")");
  }
  ResonanceSet set;
  set.N = pencil.N;
  set.nu = pencil.nu;
  set.method = ResonanceMethod::kPencil;
  const auto& ev = solver.eigenvalues();
  set.values.assign(ev.data(), ev.data() + ev.size());
  std::sort(set.values.begin(), set.values.end(), lexicographic);
  return set;
}

ResonanceSet asymptotic_resonances(const DampingProfile& profile, double nu, int k_max) {
  if (!std::isfinite(nu) || nu < 0.0) throw InvalidArgument("nu must be finite and >= 0");
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  ResonanceSet set;
  set.nu = nu;
  set.method = ResonanceMethod::kAsymptotic;
  const double mean = profile.fourier_coefficient(0).real();
  for (int k = 1; k <= k_max; ++k) {
    const double split = std::abs(profile.fourier_coefficient(2 * k));
    const double root = std::sqrt(static_cast<double>(k));
    for (double sign : {1.0, -1.0}) {
      const Complex tau(root, -0.5 * nu * (mean + sign * split));
      set.values.push_back(tau);
      set.values.push_back(-std::conj(tau));
    }
  }
  std::sort(set.values.begin(), set.values.end(), lexicographic);
  return set;
}

ResonanceSet transport_resonances(Complex mean_damping, double h, int k_max) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("h must be > 0");
  if (k_max < 0) throw InvalidArgument("k_max must be >= 0");
  ResonanceSet set;
  set.method = ResonanceMethod::kExactFormula;
  const double b = std::sqrt(h) * mean_damping.real();
  for (int k = -k_max; k <= k_max; ++k) {
    const auto [z1, z2] = damped_quadratic_roots(b, h * k);
    set.values.push_back(z1);
    set.values.push_back(z2);
  }
  std::sort(set.values.begin(), set.values.end(), lexicographic);
  return set;
}

ResonanceSet transport_resonances(const DampingProfile& profile, double h, int k_max) {
  return transport_resonances(profile.fourier_coefficient(0), h, k_max);
}

ResonanceSet constant_damping_resonances(double c, int N) {
  if (N < 0) throw InvalidArgument("N must be >= 0");
  ResonanceSet set;
  set.N = N;
  set.nu = c;
  set.method = ResonanceMethod::kExactFormula;
  for (int n = -N; n <= N; ++n) {
    const auto [z1, z2] = damped_quadratic_roots(c, std::abs(n));
    set.values.push_back(z1);
    set.values.push_back(z2);
  }
  std::sort(set.values.begin(), set.values.end(), lexicographic);
  return set;
}

std::vector<ResonanceMatch> match_resonances(const ResonanceSet& a, const ResonanceSet& b,
                                             const ComplexRegion& region) {
  std::vector<Complex> left, right;
  std::copy_if(a.values.begin(), a.values.end(), std::back_inserter(left),
               [&](Complex z) { return region.contains(z); });
  std::copy_if(b.values.begin(), b.values.end(), std::back_inserter(right),
               [&](Complex z) { return region.contains(z); });

  struct Candidate {
    double distance;
    std::size_t i, j;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(left.size() * right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      candidates.push_back({std::abs(left[i] - right[j]), i, j});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });

  std::vector<bool> used_left(left.size()), used_right(right.size());
  std::vector<ResonanceMatch> matches;
  for (const auto& c : candidates) {
    if (used_left[c.i] || used_right[c.j]) continue;
    used_left[c.i] = used_right[c.j] = true;
    matches.push_back({left[c.i], right[c.j], c.distance});
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!used_left[i]) matches.push_back({left[i], std::nullopt, 0.0});
  }
  for (std::size_t j = 0; j < right.size(); ++j) {
    if (!used_right[j]) matches.push_back({std::nullopt, right[j], 0.0});
  }
  return matches;
}

ResonanceSet right_half_plane(const ResonanceSet& set, double tolerance) {
  ResonanceSet out = set;
  out.values.clear();
  std::copy_if(set.values.begin(), set.values.end(), std::back_inserter(out.values),
               [tolerance](Complex z) { return z.real() >= -tolerance; });
  return out;
}

double reflection_defect(const ResonanceSet& set) {
  double worst = 0.0;
  for (const auto& z : set.values) {
    const Complex mirror = -std::conj(z);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : set.values) best = std::min(best, std::abs(w - mirror));
    worst = std::max(worst, best);
  }
  return worst;
}

std::optional<Complex> slowest_nonzero(const ResonanceSet& set, double zero_tolerance) {
  std::optional<Complex> best;
  for (const auto& z : set.values) {
    if (std::abs(z) <= zero_tolerance) continue;
    if (!best || std::abs(z.imag()) < std::abs(best->imag())) best = z;
  }
  return best;
}

}  // namespace fracwave
