#pragma once

// Reference computations that share no code with the library: naive DFTs,
// explicit convolutions, closed-form modal solutions and quadrature.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

// Logical mode n of an M-point grid, n in [-M/2, M/2 - 1].
inline int mode_of(std::size_t slot, std::size_t M) {
  const auto s = static_cast<long>(slot);
  const auto m = static_cast<long>(M);
  return static_cast<int>(s < m / 2 ? s : s - m);
}

// O(M^2) forward transform, (1/M) Sum_j f_j e^{-i n x_j}, in FFT order.
inline std::vector<Complex> naive_dft(const std::vector<Complex>& f) {
  const std::size_t M = f.size();
  std::vector<Complex> out(M);
  for (std::size_t k = 0; k < M; ++k) {
    const int n = mode_of(k, M);
    Complex acc{};
    for (std::size_t j = 0; j < M; ++j) {
      const double x = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
      acc += f[j] * std::polar(1.0, -n * x);
    }
    out[k] = acc / static_cast<double>(M);
  }
  return out;
}

inline std::vector<Complex> naive_dft(const std::vector<double>& f) {
  return naive_dft(std::vector<Complex>(f.begin(), f.end()));
}

// O(M^2) synthesis Sum_n c_n e^{i n x_j} from FFT-ordered coefficients.
inline std::vector<Complex> naive_idft(const std::vector<Complex>& c) {
  const std::size_t M = c.size();
  std::vector<Complex> out(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double x = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
    Complex acc{};
    for (std::size_t k = 0; k < M; ++k) acc += c[k] * std::polar(1.0, mode_of(k, M) * x);
    out[j] = acc;
  }
  return out;
}

// Untruncated Toeplitz product (a * b)(n) = Sum_m a(n - m) b(m) over
// coefficient maps given as functions of the logical mode.
inline Complex toeplitz_entry(const std::function<Complex(int)>& a,
                              const std::function<Complex(int)>& b, int n, int band) {
  Complex acc{};
  for (int m = -band; m <= band; ++m) acc += a(n - m) * b(m);
  return acc;
}

// Solution of u'' + c u' + a u = 0 with u(0) = u0, u'(0) = v0; returns
// (u(t), u'(t)). Requires c^2 != 4a.
inline std::pair<Complex, Complex> damped_oscillator(Complex u0, Complex v0, double a, double c,
                                                     double t) {
  const Complex disc = std::sqrt(Complex(c * c - 4.0 * a, 0.0));
  const Complex l1 = (-c + disc) / 2.0;
  const Complex l2 = (-c - disc) / 2.0;
  const Complex B = (v0 - l1 * u0) / (l2 - l1);
  const Complex A = u0 - B;
  const Complex e1 = std::exp(l1 * t);
  const Complex e2 = std::exp(l2 * t);
  return {A * e1 + B * e2, A * l1 * e1 + B * l2 * e2};
}

// Composite Gauss-Legendre (5 nodes) on [a, b] with `panels` panels.
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                             int panels) {
  static constexpr double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                                  -0.9061798459386640, 0.9061798459386640};
  static constexpr double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                  0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < 5; ++i) total += w[i] * f(mid + 0.5 * h * x[i]);
  }
  return 0.5 * h * total;
}

// 1 / min_n ||n| - tau^2| over |n| <= N: the resolvent norm with no damping.
inline double undamped_resolvent_norm(double tau, int N) {
  double best = INFINITY;
  for (int n = 0; n <= N; ++n) best = std::min(best, std::abs(n - tau * tau));
  return 1.0 / best;
}

inline std::vector<double> random_smooth(std::size_t M, int bandwidth, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> a(bandwidth + 1), b(bandwidth + 1);
  for (int k = 0; k <= bandwidth; ++k) {
    a[k] = g(rng);
    b[k] = g(rng);
  }
  std::vector<double> f(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double xj = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
    for (int k = 0; k <= bandwidth; ++k) f[j] += a[k] * std::cos(k * xj) + b[k] * std::sin(k * xj);
  }
  return f;
}

}  // namespace oracle
