#pragma once

// Periodic Fourier layer on T = R / 2piZ.
//
// Coefficients follow u_hat(n) = (1/2pi) Int e^{-inx} u(x) dx, realised on a
// uniform grid x_j = 2pi j / M as u_hat(n) = (1/M) Sum_j u(x_j) e^{-i n x_j}.
// Synthesis is u(x_j) = Sum_n u_hat(n) e^{i n x_j} over n in [-M/2, M/2 - 1].

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fracwave {

using Complex = std::complex<double>;

class GridSpec {
 public:
  static constexpr std::size_t kDefaultSize = 512;

  // Throws InvalidArgument unless size >= 8 and size is a power of two.
  explicit GridSpec(std::size_t size = kDefaultSize);

  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept;
  double point(std::size_t j) const noexcept;
  std::vector<double> points() const;

  // Logical mode range [min_mode, max_mode] = [-M/2, M/2 - 1].
  int min_mode() const noexcept { return -static_cast<int>(size_ / 2); }
  int max_mode() const noexcept { return static_cast<int>(size_ / 2) - 1; }
  bool contains_mode(int n) const noexcept { return n >= min_mode() && n <= max_mode(); }

  // Storage slot of logical mode n (FFT ordering). Requires contains_mode(n).
  std::size_t slot(int n) const noexcept;
  // Logical mode stored in a slot.
  int mode(std::size_t slot) const noexcept;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t size_;
};

// Real samples u(x_j).
class GridField {
 public:
  explicit GridField(GridSpec spec);
  // Throws InvalidArgument on a length mismatch or a non-finite sample.
  GridField(GridSpec spec, std::vector<double> values);

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  double& operator[](std::size_t j) noexcept { return values_[j]; }

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

// Fourier coefficients for the logical modes of a GridSpec, stored in FFT
// order. Fields of real functions are Hermitian; complex fields are allowed.
class ModeField {
 public:
  explicit ModeField(GridSpec spec);
  ModeField(GridSpec spec, std::vector<Complex> fft_ordered);

  const GridSpec& spec() const noexcept { return spec_; }

  // Access by logical mode. Out-of-range modes throw InvalidArgument.
  Complex at(int n) const;
  void set(int n, Complex value);

  std::span<const Complex> data() const noexcept { return coeffs_; }
  std::span<Complex> data() noexcept { return coeffs_; }

  ModeField& operator+=(const ModeField& other);
  ModeField& operator-=(const ModeField& other);
  ModeField& operator*=(Complex factor);

  friend ModeField operator+(ModeField a, const ModeField& b) { return a += b; }
  friend ModeField operator-(ModeField a, const ModeField& b) { return a -= b; }
  friend ModeField operator*(Complex c, ModeField a) { return a *= c; }

 private:
  GridSpec spec_;
  std::vector<Complex> coeffs_;
};

enum class Dealiasing { kNone, kThreeHalves };

ModeField to_modes(const GridField& field);
ModeField to_modes(const GridSpec& spec, std::span<const Complex> samples);

// Real synthesis. Throws DomainError when the imaginary residue exceeds
// tolerance * max(1, max |u(x_j)|), i.e. the field is not Hermitian.
GridField to_grid(const ModeField& modes, double tolerance = 1e-10);
std::vector<Complex> to_complex_grid(const ModeField& modes);

// |D|^s: multiplies mode n by |n|^s. Throws InvalidArgument for s < 0 or
// non-finite s. The constant mode is annihilated for s > 0.
ModeField apply_fractional_laplacian(const ModeField& modes, double s);

// Pointwise product with real samples chi(x_j), formed on the grid. With
// kThreeHalves the product is taken on a 3M/2 grid using the trigonometric
// interpolant of chi and truncated back to M modes.
ModeField apply_multiplication(const GridField& chi, const ModeField& modes,
                               Dealiasing dealiasing = Dealiasing::kNone);

// Integral norms with dx on [0, 2pi): ||u||^2 = 2pi Sum |u_hat(n)|^2 and
// ||u||_{H^1/2 seminorm}^2 = 2pi Sum |n| |u_hat(n)|^2.
double l2_norm(const ModeField& modes);
double h_half_norm(const ModeField& modes);

// Max over representable pairs of |u_hat(-n) - conj(u_hat(n))|, relative to
// the largest coefficient. The Nyquist slot is compared with its own
// conjugate.
double hermitian_defect(const ModeField& modes);

}  // namespace fracwave
