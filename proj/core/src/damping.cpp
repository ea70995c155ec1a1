#include "fracwave/damping.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fracwave/error.hpp"

namespace fracwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Least-squares slope and RMS residual of y against x.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  return {slope, std::sqrt(ss / n)};
}

DampingZero fit_zero(std::span<const double> chi, std::size_t j, double dx,
                     std::size_t fit_points) {
  const std::size_t m = chi.size();
  DampingZero zero;
  zero.location = dx * static_cast<double>(j);

  std::vector<double> log_r, log_chi;
  bool usable = true;
  for (std::size_t k = 1; k <= fit_points; ++k) {
    for (std::size_t idx : {(j + k) % m, (j + m - k % m) % m}) {
      if (!(chi[idx] > 0.0)) {
        usable = false;
        continue;
      }
      log_r.push_back(std::log(dx * static_cast<double>(k)));
      log_chi.push_back(std::log(chi[idx]));
    }
  }
  if (!usable || log_r.size() < 4) return zero;

  const auto [slope, residual] = fit_line(log_r, log_chi);
  zero.fitted_slope = slope;
  zero.fit_residual = residual;
  const double half = slope / 2.0;
  const double nearest = std::round(half);
  if (nearest >= 1.0 && std::abs(half - nearest) <= 0.25) zero.order = static_cast<int>(nearest);
  return zero;
}

void check_nu(double nu) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw InvalidArgument("damping amplitude nu must be finite and >= 0");
  }
}

}  // namespace

DampingKind parse_damping_kind(std::string_view name) {
  if (name == "chi1") return DampingKind::kChi1;
  if (name == "chi2") return DampingKind::kChi2;
  if (name == "chi3") return DampingKind::kChi3;
  if (name == "constant") return DampingKind::kConstant;
  if (name == "zero") return DampingKind::kZero;
  if (name == "custom") return DampingKind::kCustom;
  throw InvalidArgument("unknown damping kind '" + std::string(name) + "'");
}

std::string_view to_string(DampingKind kind) {
  switch (kind) {
    case DampingKind::kChi1: return "chi1";
    case DampingKind::kChi2: return "chi2";
    case DampingKind::kChi3: return "chi3";
    case DampingKind::kConstant: return "constant";
    case DampingKind::kZero: return "zero";
    case DampingKind::kCustom: return "custom";
  }
  return "unknown";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::kLocalized: return "localized";
    case Classification::kFiniteDegeneracy: return "finite-degeneracy";
    case Classification::kStrictlyPositive: return "strictly-positive";
    case Classification::kZero: return "zero";
    case Classification::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

DampingProfile::DampingProfile(DampingKind kind, double nu, GridField samples,
                               const ZeroDetectionOptions& options)
    : kind_(kind),
      nu_(nu),
      samples_(std::move(samples)),
      fourier_(to_modes(samples_)),
      degeneracy_(detect_zeros_degeneracy(samples_, options)) {}

Complex DampingProfile::fourier_coefficient(int n) const {
  const int half = static_cast<int>(spec().size() / 2);
  if (n < -half || n > half) {
    throw InvalidArgument("Fourier coefficient index " + std::to_string(n) +
                          " outside |n| <= " + std::to_string(half));
  }
  return fourier_.at(n == half ? -half : n);
}

double closed_form(DampingKind kind, double nu, double x) {
  switch (kind) {
    case DampingKind::kChi1: {
      const double c = std::cos(x);
      return nu * (c * c);
    }
    case DampingKind::kChi2: {
      const double d = x - kPi;
      return nu * std::exp(-2.0 * d * d);
    }
    case DampingKind::kChi3:
      return nu * (0.5 * (std::tanh(20.0 * (x - kPi + 0.25)) - std::tanh(20.0 * (x - kPi - 0.25))));
    case DampingKind::kConstant: return nu;
    case DampingKind::kZero: return 0.0;
    case DampingKind::kCustom: break;
  }
  throw InvalidArgument("closed_form: custom profiles have no closed form");
}

DampingProfile make_profile(DampingKind kind, double nu, const GridSpec& spec) {
  check_nu(nu);
  if (kind == DampingKind::kCustom) {
    throw InvalidArgument("make_profile: custom profiles need samples (use make_custom_profile)");
  }
  std::vector<double> values(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) values[j] = closed_form(kind, nu, spec.point(j));
  return DampingProfile(kind, nu, GridField(spec, std::move(values)));
}

DampingProfile make_custom_profile(GridField samples) {
  const auto v = samples.values();
  const double max_value = *std::max_element(v.begin(), v.end());
  const double min_value = *std::min_element(v.begin(), v.end());
  if (min_value < -1e-12 * std::max(1.0, max_value)) {
    throw InvalidArgument("custom damping has negative samples (min " +
                          std::to_string(min_value) + ")");
  }
  return DampingProfile(DampingKind::kCustom, 1.0, std::move(samples));
}

GridField trigonometric_resample(std::span<const double> x, std::span<const double> values,
                                 const GridSpec& spec) {
  const std::size_t k = values.size();
  if (k < 2 || x.size() != k) throw InvalidArgument("profile CSV needs at least two samples");
  const double h = kTwoPi / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(x[i] - x[0] - h * static_cast<double>(i)) > 1e-9 * kTwoPi) {
      throw InvalidArgument("profile CSV abscissae must be uniform on [0, 2pi)");
    }
  }
  // Interpolant Sum c_n e^{in(x - x0)}; for even k the Nyquist term is split
  // evenly between +-k/2 so the interpolant stays real.
  const int half = static_cast<int>(k / 2);
  const int low = -half;
  const int high = half;
  std::vector<Complex> coeffs(static_cast<std::size_t>(high - low + 1));
  for (int n = low; n <= high; ++n) {
    Complex c{};
    for (std::size_t i = 0; i < k; ++i) {
      c += values[i] * std::polar(1.0, -n * h * static_cast<double>(i));
    }
    c /= static_cast<double>(k);
    if (k % 2 == 0 && std::abs(n) == half) c *= 0.5;
    coeffs[static_cast<std::size_t>(n - low)] = c;
  }
  std::vector<double> out(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double t = spec.point(j) - x[0];
    double sum = 0.0;
    for (int n = low; n <= high; ++n) {
      if (std::abs(n) >= static_cast<int>(spec.size() / 2)) continue;
      sum += (coeffs[static_cast<std::size_t>(n - low)] * std::polar(1.0, n * t)).real();
    }
    out[j] = sum;
  }
  return GridField(spec, std::move(out));
}

DampingProfile load_profile_csv(const std::filesystem::path& path, const GridSpec& spec) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open profile CSV '" + path.string() + "'");
  std::vector<double> xs, chis;
  std::string line;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double xv = 0, cv = 0;
    if (!(fields >> xv >> cv)) {
      if (first_data_line) {
        first_data_line = false;
        continue;
      }
      throw InvalidArgument("malformed profile CSV row: '" + line + "'");
    }
    first_data_line = false;
    xs.push_back(xv);
    chis.push_back(cv);
  }
  return make_custom_profile(trigonometric_resample(xs, chis, spec));
}

DegeneracyReport detect_zeros_degeneracy(const GridField& samples,
                                         const ZeroDetectionOptions& options) {
  if (!(options.threshold > 0.0)) throw InvalidArgument("zero threshold must be > 0");
  const auto chi = samples.values();
  const std::size_t m = chi.size();
  const double dx = samples.spec().spacing();
  DegeneracyReport report;

  const double max_value = *std::max_element(chi.begin(), chi.end());
  if (!(max_value > 0.0)) {
    report.classification = Classification::kZero;
    report.longest_vanishing_run = m;
    return report;
  }
  const double cut = options.threshold * max_value;
  std::vector<bool> below(m);
  for (std::size_t j = 0; j < m; ++j) below[j] = chi[j] < cut;

  // Runs of below-threshold points on the circle.
  std::size_t start = 0;
  while (start < m && below[start]) ++start;
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // (first index, length)
  for (std::size_t step = 0; step < m;) {
    const std::size_t j = (start + step) % m;
    if (!below[j]) {
      ++step;
      continue;
    }
    std::size_t len = 0;
    while (step + len < m && below[(start + step + len) % m]) ++len;
    runs.emplace_back(j, len);
    step += len;
  }
  for (const auto& [first, len] : runs) {
    report.longest_vanishing_run = std::max(report.longest_vanishing_run, len);
  }
  if (report.longest_vanishing_run >= 3) {
    report.classification = Classification::kLocalized;
    return report;
  }

  for (const auto& [first, len] : runs) {
    std::size_t best = first;
    for (std::size_t i = 1; i < len; ++i) {
      const std::size_t j = (first + i) % m;
      if (chi[j] < chi[best]) best = j;
    }
    report.zeros.push_back(fit_zero(chi, best, dx, options.fit_points));
  }
  if (report.zeros.empty()) {
    report.classification = Classification::kStrictlyPositive;
    return report;
  }
  int max_order = 0;
  for (const auto& z : report.zeros) {
    if (!z.order) {
      report.classification = Classification::kIndeterminate;
      return report;
    }
    max_order = std::max(max_order, *z.order);
  }
  report.classification = Classification::kFiniteDegeneracy;
  report.max_order = max_order;
  return report;
}

DampingProfile bump_function(double center, double radius, const GridSpec& spec) {
  if (!(radius > 0.0) || !(radius < kPi)) throw InvalidArgument("bump radius must be in (0, pi)");
  if (!std::isfinite(center)) throw InvalidArgument("bump center must be finite");
  std::vector<double> values(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) {
    double d = std::fmod(std::abs(spec.point(j) - center), kTwoPi);
    d = std::min(d, kTwoPi - d);
    const double r = d / radius;
    values[j] = r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0;
  }
  return DampingProfile(DampingKind::kCustom, 1.0, GridField(spec, std::move(values)));
}

}  // namespace fracwave
