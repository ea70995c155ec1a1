#include "fracwave/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "fracwave/error.hpp"

namespace fracwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_spec(const GridSpec& a, const GridSpec& b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": grid sizes differ (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

GridSpec::GridSpec(std::size_t size) : size_(size) {
  if (size < 8 || !std::has_single_bit(size)) {
    throw InvalidArgument("grid size must be a power of two >= 8, got " + std::to_string(size));
  }
}

double GridSpec::spacing() const noexcept { return kTwoPi / static_cast<double>(size_); }

double GridSpec::point(std::size_t j) const noexcept {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(size_);
}

std::vector<double> GridSpec::points() const {
  std::vector<double> x(size_);
  for (std::size_t j = 0; j < size_; ++j) x[j] = point(j);
  return x;
}

std::size_t GridSpec::slot(int n) const noexcept {
  return n >= 0 ? static_cast<std::size_t>(n) : size_ - static_cast<std::size_t>(-n);
}

int GridSpec::mode(std::size_t slot) const noexcept {
  return slot < size_ / 2 ? static_cast<int>(slot)
                          : static_cast<int>(slot) - static_cast<int>(size_);
}

GridField::GridField(GridSpec spec) : spec_(spec), values_(spec.size(), 0.0) {}

GridField::GridField(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.size()) {
    throw InvalidArgument("GridField: expected " + std::to_string(spec_.size()) +
                          " samples, got " + std::to_string(values_.size()));
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw InvalidArgument("GridField: non-finite sample");
  }
}

ModeField::ModeField(GridSpec spec) : spec_(spec), coeffs_(spec.size()) {}

ModeField::ModeField(GridSpec spec, std::vector<Complex> fft_ordered)
    : spec_(spec), coeffs_(std::move(fft_ordered)) {
  if (coeffs_.size() != spec_.size()) {
    throw InvalidArgument("ModeField: expected " + std::to_string(spec_.size()) +
                          " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

Complex ModeField::at(int n) const {
  if (!spec_.contains_mode(n)) throw InvalidArgument("mode " + std::to_string(n) + " out of range");
  return coeffs_[spec_.slot(n)];
}

void ModeField::set(int n, Complex value) {
  if (!spec_.contains_mode(n)) throw InvalidArgument("mode " + std::to_string(n) + " out of range");
  coeffs_[spec_.slot(n)] = value;
}

ModeField& ModeField::operator+=(const ModeField& other) {
  require_same_spec(spec_, other.spec_, "ModeField +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ModeField& ModeField::operator-=(const ModeField& other) {
  require_same_spec(spec_, other.spec_, "ModeField -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

ModeField& ModeField::operator*=(Complex factor) {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

ModeField to_modes(const GridSpec& spec, std::span<const Complex> samples) {
  if (samples.size() != spec.size()) throw InvalidArgument("to_modes: sample count mismatch");
  std::vector<Complex> coeffs(spec.size());
  detail::fft_forward(samples, coeffs);
  const double scale = 1.0 / static_cast<double>(spec.size());
  for (auto& c : coeffs) c *= scale;
  return ModeField(spec, std::move(coeffs));
}

ModeField to_modes(const GridField& field) {
  const auto values = field.values();
  std::vector<Complex> samples(values.begin(), values.end());
  return to_modes(field.spec(), samples);
}

std::vector<Complex> to_complex_grid(const ModeField& modes) {
  std::vector<Complex> samples(modes.spec().size());
  detail::fft_backward(modes.data(), samples);
  return samples;
}

GridField to_grid(const ModeField& modes, double tolerance) {
  const auto samples = to_complex_grid(modes);
  double max_abs = 1.0;
  double max_imag = 0.0;
  for (const auto& s : samples) {
    max_abs = std::max(max_abs, std::abs(s.real()));
    max_imag = std::max(max_imag, std::abs(s.imag()));
  }
  if (max_imag > tolerance * max_abs) {
    throw DomainError("to_grid: field is not real (imaginary residue " + std::to_string(max_imag) +
                      ")");
  }
  std::vector<double> values(samples.size());
  std::transform(samples.begin(), samples.end(), values.begin(),
                 [](const Complex& s) { return s.real(); });
  return GridField(modes.spec(), std::move(values));
}

ModeField apply_fractional_laplacian(const ModeField& modes, double s) {
  if (!std::isfinite(s) || s < 0.0) {
    throw InvalidArgument("fractional Laplacian order must be finite and >= 0");
  }
  ModeField out = modes;
  const auto& spec = modes.spec();
  auto data = out.data();
  for (std::size_t slot = 0; slot < data.size(); ++slot) {
    const int n = spec.mode(slot);
    // |D|^0 is the identity, including on the constant mode.
    if (s == 0.0) continue;
    // The Nyquist multiplier (M/2)^s is real, so Hermitian symmetry survives.
    data[slot] *= n == 0 ? 0.0 : std::pow(static_cast<double>(std::abs(n)), s);
  }
  return out;
}

ModeField apply_multiplication(const GridField& chi, const ModeField& modes,
                               Dealiasing dealiasing) {
  require_same_spec(chi.spec(), modes.spec(), "apply_multiplication");
  const GridSpec& spec = modes.spec();

  if (dealiasing == Dealiasing::kNone) {
    auto samples = to_complex_grid(modes);
    const auto c = chi.values();
    for (std::size_t j = 0; j < samples.size(); ++j) samples[j] *= c[j];
    return to_modes(spec, samples);
  }

  const std::size_t fine_size = spec.size() * 3 / 2;
  // 3M/2 is not a power of two, so work with plain vectors rather than
  // GridSpec-carrying fields on the padded grid.
  auto padded_slot = [fine_size](int n) {
    return n >= 0 ? static_cast<std::size_t>(n) : fine_size - static_cast<std::size_t>(-n);
  };
  std::vector<Complex> u_hat(fine_size), chi_hat(fine_size);
  const ModeField chi_modes = to_modes(chi);
  for (std::size_t s = 0; s < spec.size(); ++s) {
    const int n = spec.mode(s);
    u_hat[padded_slot(n)] = modes.data()[s];
    chi_hat[padded_slot(n)] = chi_modes.data()[s];
  }
  std::vector<Complex> u_fine(fine_size), chi_fine(fine_size);
  detail::fft_backward(u_hat, u_fine);
  detail::fft_backward(chi_hat, chi_fine);
  for (std::size_t j = 0; j < fine_size; ++j) u_fine[j] *= chi_fine[j].real();
  detail::fft_forward(u_fine, u_hat);

  std::vector<Complex> out(spec.size());
  const double scale = 1.0 / static_cast<double>(fine_size);
  for (std::size_t s = 0; s < spec.size(); ++s) out[s] = u_hat[padded_slot(spec.mode(s))] * scale;
  return ModeField(spec, std::move(out));
}

double l2_norm(const ModeField& modes) {
  double sum = 0.0;
  for (const auto& c : modes.data()) sum += std::norm(c);
  return std::sqrt(kTwoPi * sum);
}

double h_half_norm(const ModeField& modes) {
  const auto& spec = modes.spec();
  const auto data = modes.data();
  double sum = 0.0;
  for (std::size_t s = 0; s < data.size(); ++s) {
    sum += std::abs(spec.mode(s)) * std::norm(data[s]);
  }
  return std::sqrt(kTwoPi * sum);
}

double hermitian_defect(const ModeField& modes) {
  const auto& spec = modes.spec();
  double scale = 0.0;
  for (const auto& c : modes.data()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double defect = 0.0;
  for (int n = 0; n <= spec.max_mode(); ++n) {
    defect = std::max(defect, std::abs(modes.at(-n) - std::conj(modes.at(n))));
  }
  const Complex nyquist = modes.at(spec.min_mode());
  defect = std::max(defect, std::abs(nyquist - std::conj(nyquist)));
  return defect / scale;
}

}  // namespace fracwave
