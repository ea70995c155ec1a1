#include "fracwave/evolution.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "fracwave/error.hpp"

namespace fracwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Applies B and the wave operator to packed states y = [u | v | q] where q
// accumulates the dissipated energy. All buffers are owned per operator, so
// one instance serves one integration.
class DampedWaveOperator {
 public:
  explicit DampedWaveOperator(const SimulationConfig& config)
      : spec_(config.spec()),
        model_(config.model),
        dealiasing_(config.dealiasing),
        size_(spec_.size()),
        abs_mode_(size_),
        sqrt_mode_(size_),
        work_(size_),
        damped_(size_) {
    for (std::size_t s = 0; s < size_; ++s) {
      const double n = std::abs(spec_.mode(s));
      abs_mode_[s] = n;
      sqrt_mode_[s] = std::sqrt(n);
    }
    const auto chi = config.damping.samples().values();
    if (dealiasing_ == Dealiasing::kNone) {
      chi_.assign(chi.begin(), chi.end());
    } else {
      // Trigonometric interpolant of chi on the 3M/2 grid.
      fine_size_ = size_ * 3 / 2;
      std::vector<Complex> chi_hat(fine_size_), chi_fine(fine_size_);
      const auto& modes = config.damping.fourier().data();
      for (std::size_t s = 0; s < size_; ++s) chi_hat[fine_slot(spec_.mode(s))] = modes[s];
      detail::fft_backward(chi_hat, chi_fine);
      chi_.resize(fine_size_);
      for (std::size_t j = 0; j < fine_size_; ++j) chi_[j] = chi_fine[j].real();
      fine_work_.resize(fine_size_);
    }
  }

  std::size_t size() const noexcept { return size_; }

  // out = B v; returns 4 pi Re Sum conj(v_hat) (B v)_hat, the dissipation
  // rate of the semi-discrete system.
  double apply_damping(std::span<const Complex> v, std::span<Complex> out) {
    const bool half_wave = model_ == DampingModel::kHalfWave;
    for (std::size_t s = 0; s < size_; ++s) work_[s] = half_wave ? sqrt_mode_[s] * v[s] : v[s];
    multiply_chi(work_, damped_);
    double rate = 0.0;
    for (std::size_t s = 0; s < size_; ++s) {
      rate += (std::conj(work_[s]) * damped_[s]).real();
      out[s] = half_wave ? sqrt_mode_[s] * damped_[s] : damped_[s];
    }
    return 2.0 * kTwoPi * rate;
  }

  void operator()(double /*t*/, std::span<const Complex> y, std::span<Complex> dydt) {
    const auto u = y.subspan(0, size_);
    const auto v = y.subspan(size_, size_);
    auto du = dydt.subspan(0, size_);
    auto dv = dydt.subspan(size_, size_);
    const double rate = apply_damping(v, dv);
    for (std::size_t s = 0; s < size_; ++s) {
      du[s] = v[s];
      dv[s] = -abs_mode_[s] * u[s] - dv[s];
    }
    dydt[2 * size_] = rate;
  }

 private:
  std::size_t fine_slot(int n) const {
    return n >= 0 ? static_cast<std::size_t>(n) : fine_size_ - static_cast<std::size_t>(-n);
  }

  void multiply_chi(std::span<const Complex> in, std::span<Complex> out) {
    if (dealiasing_ == Dealiasing::kNone) {
      detail::fft_backward(in, out);
      for (std::size_t j = 0; j < size_; ++j) out[j] *= chi_[j];
      detail::fft_forward(out, out);
      const double scale = 1.0 / static_cast<double>(size_);
      for (auto& c : out) c *= scale;
      return;
    }
    std::fill(fine_work_.begin(), fine_work_.end(), Complex{});
    for (std::size_t s = 0; s < size_; ++s) fine_work_[fine_slot(spec_.mode(s))] = in[s];
    detail::fft_backward(fine_work_, fine_work_);
    for (std::size_t j = 0; j < fine_size_; ++j) fine_work_[j] *= chi_[j];
    detail::fft_forward(fine_work_, fine_work_);
    const double scale = 1.0 / static_cast<double>(fine_size_);
    for (std::size_t s = 0; s < size_; ++s) out[s] = fine_work_[fine_slot(spec_.mode(s))] * scale;
  }

  GridSpec spec_;
  DampingModel model_;
  Dealiasing dealiasing_;
  std::size_t size_;
  std::size_t fine_size_ = 0;
  std::vector<double> abs_mode_;
  std::vector<double> sqrt_mode_;
  std::vector<double> chi_;
  std::vector<Complex> work_;
  std::vector<Complex> damped_;
  std::vector<Complex> fine_work_;
};

void require_compatible(const StateVector& state, const SimulationConfig& config) {
  if (state.u.spec() != config.spec() || state.v.spec() != config.spec()) {
    throw InvalidArgument("state and damping profile use different grids");
  }
}

std::vector<double> sample_times(double t_end, double dt) {
  std::vector<double> times;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t > t_end * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  times.push_back(t_end);
  return times;
}

}  // namespace

DampingModel parse_damping_model(std::string_view name) {
  if (name == "multiplicative") return DampingModel::kMultiplicative;
  if (name == "half-wave") return DampingModel::kHalfWave;
  throw InvalidArgument("unknown damping model '" + std::string(name) + "'");
}

std::string_view to_string(DampingModel model) {
  return model == DampingModel::kMultiplicative ? "multiplicative" : "half-wave";
}

void SimulationConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be > 0");
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) {
    throw InvalidArgument("sample_dt must be > 0");
  }
  for (double tol : {rel_tol, abs_tol}) {
    if (!(tol > 0.0) || tol > 1e-3) throw InvalidArgument("tolerances must lie in (0, 1e-3]");
  }
}

double energy(const StateVector& state) {
  const double a = h_half_norm(state.u);
  const double b = l2_norm(state.v);
  return a * a + b * b;
}

double dissipation_rate(const StateVector& state, const SimulationConfig& config) {
  require_compatible(state, config);
  DampedWaveOperator op(config);
  std::vector<Complex> out(op.size());
  return op.apply_damping(state.v.data(), out);
}

StateVector rhs_eval(const StateVector& state, const SimulationConfig& config) {
  require_compatible(state, config);
  DampedWaveOperator op(config);
  const std::size_t m = op.size();
  std::vector<Complex> y(2 * m + 1), dydt(2 * m + 1);
  std::copy(state.u.data().begin(), state.u.data().end(), y.begin());
  std::copy(state.v.data().begin(), state.v.data().end(), y.begin() + static_cast<long>(m));
  op(0.0, y, dydt);
  return {ModeField(config.spec(), {dydt.begin(), dydt.begin() + static_cast<long>(m)}),
          ModeField(config.spec(),
                    {dydt.begin() + static_cast<long>(m), dydt.begin() + static_cast<long>(2 * m)})};
}

Trajectory integrate(const StateVector& initial, const SimulationConfig& config) {
  config.validate();
  require_compatible(initial, config);

  DampedWaveOperator op(config);
  const std::size_t m = op.size();
  std::vector<Complex> y(2 * m + 1);
  std::copy(initial.u.data().begin(), initial.u.data().end(), y.begin());
  std::copy(initial.v.data().begin(), initial.v.data().end(), y.begin() + static_cast<long>(m));

  OdeOptions options;
  options.rel_tol = config.rel_tol;
  options.abs_tol = config.abs_tol;
  DormandPrince45<Complex> solver(
      [&op](double t, std::span<const Complex> state, std::span<Complex> dydt) {
        op(t, state, dydt);
      },
      options);

  const auto times = sample_times(config.t_end, config.sample_dt);
  Trajectory traj;
  traj.times.reserve(times.size());
  traj.energies.reserve(times.size());
  traj.dissipation.reserve(times.size());
  const GridSpec spec = config.spec();
  traj.stats = solver.integrate(
      0.0, std::move(y), config.t_end, times, [&](double t, std::span<const Complex> state) {
        StateVector s{ModeField(spec, {state.begin(), state.begin() + static_cast<long>(m)}),
                      ModeField(spec, {state.begin() + static_cast<long>(m),
                                       state.begin() + static_cast<long>(2 * m)})};
        traj.times.push_back(t);
        traj.energies.push_back(energy(s));
        traj.dissipation.push_back(state[2 * m].real());
        if (config.store_snapshots) traj.snapshots.push_back(std::move(s));
      });
  return traj;
}

InitialCondition parse_initial_condition(std::string_view name) {
  if (name == "localized-highfreq") return InitialCondition::kLocalizedHighFreq;
  if (name == "sine") return InitialCondition::kSine;
  if (name == "custom-modes") return InitialCondition::kCustomModes;
  throw InvalidArgument("unknown initial condition '" + std::string(name) + "'");
}

std::string_view to_string(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::kLocalizedHighFreq: return "localized-highfreq";
    case InitialCondition::kSine: return "sine";
    case InitialCondition::kCustomModes: return "custom-modes";
  }
  return "unknown";
}

StateVector initial_condition(InitialCondition ic, const GridSpec& spec,
                              std::span<const ModeAmplitude> custom_modes) {
  StateVector state{ModeField(spec), ModeField(spec)};
  switch (ic) {
    case InitialCondition::kLocalizedHighFreq: {
      std::vector<double> values(spec.size());
      for (std::size_t j = 0; j < spec.size(); ++j) {
        const double x = spec.point(j);
        // Closed form evaluated at x + pi without periodic wrap (half bump at x = 0).
        values[j] = closed_form(DampingKind::kChi3, 0.25, x + std::numbers::pi) * std::cos(10.0 * x);
      }
      state.u = to_modes(GridField(spec, std::move(values)));
      break;
    }
    case InitialCondition::kSine:
      state.u.set(1, Complex(0.0, -0.5));
      state.u.set(-1, Complex(0.0, 0.5));
      break;
    case InitialCondition::kCustomModes:
      if (custom_modes.empty()) throw InvalidArgument("custom-modes needs at least one mode");
      for (const auto& m : custom_modes) {
        state.u.set(m.mode, state.u.at(m.mode) + m.u_hat);
        state.v.set(m.mode, state.v.at(m.mode) + m.v_hat);
      }
      break;
  }
  return state;
}

}  // namespace fracwave
