#pragma once

// Dormand-Prince 5(4) with PI step-size control and the standard fourth-order
// continuous extension (Hairer, Norsett & Wanner, "Solving ODEs I", DOPRI5).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fracwave/error.hpp"

namespace fracwave {

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double initial_step = 0.0;  // 0 selects the step automatically
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 500'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

class StepSizeUnderflow : public DomainError {
 public:
  StepSizeUnderflow(double time, const std::string& why)
      : DomainError(why + " at t = " + std::to_string(time)), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

}  // namespace detail

template <class T>
class DormandPrince45 {
 public:
  using Rhs = std::function<void(double t, std::span<const T> y, std::span<T> dydt)>;
  // Called once per requested output time with the dense-output state.
  using Observer = std::function<void(double t, std::span<const T> y)>;

  DormandPrince45(Rhs rhs, OdeOptions options) : rhs_(std::move(rhs)), options_(options) {}

  // Integrates y' = f(t, y) from t0 to t_end. `output_times` must be sorted
  // and lie in [t0, t_end]; an output at t0 reports the initial state.
  OdeStats integrate(double t0, std::vector<T> y, double t_end,
                     std::span<const double> output_times, const Observer& observe) {
    const std::size_t n = y.size();
    OdeStats stats;
    allocate(n);
    std::size_t next_output = 0;
    while (next_output < output_times.size() && output_times[next_output] <= t0) {
      observe(output_times[next_output++], y);
    }
    if (t_end <= t0) return stats;

    double t = t0;
    evaluate(t, y, k1_, stats);
    double h = options_.initial_step > 0.0 ? options_.initial_step : initial_step(t, y, stats);
    double previous_error = 1e-4;
    bool last_rejected = false;

    while (t < t_end) {
      if (stats.accepted + stats.rejected >= options_.max_steps) {
        throw StepSizeUnderflow(t, "step budget exhausted");
      }
      h = std::min({h, options_.max_step, t_end - t});
      if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
        throw StepSizeUnderflow(t, "step size underflow");
      }
      const double error = attempt(t, h, y, stats);
      if (!std::isfinite(error)) {
        ++stats.rejected;
        h *= 0.1;
        last_rejected = true;
        continue;
      }
      const double fac11 = std::pow(error, kExponent);
      if (error <= 1.0) {
        double fac = fac11 / std::pow(previous_error, kBeta);
        fac = std::clamp(fac / kSafety, 1.0 / kMaxGrowth, 1.0 / kMinShrink);
        double h_new = h / fac;
        if (last_rejected) h_new = std::min(h_new, h);
        previous_error = std::max(error, 1e-4);

        dense_coefficients(h);
        const double t_new = (t_end - (t + h) <= 1e-14 * std::max(1.0, std::abs(t_end))) ? t_end : t + h;
        while (next_output < output_times.size() && output_times[next_output] <= t_new) {
          interpolate(t, h, output_times[next_output], dense_state_);
          observe(output_times[next_output++], dense_state_);
        }
        y.swap(y_new_);
        k1_.swap(k7_);  // first-same-as-last
        t = t_new;
        h = h_new;
        ++stats.accepted;
        last_rejected = false;
      } else {
        h /= std::min(1.0 / kMinShrink, fac11 / kSafety);
        ++stats.rejected;
        last_rejected = true;
      }
    }
    return stats;
  }

 private:
  static constexpr double kBeta = 0.04;
  static constexpr double kExponent = 0.2 - kBeta * 0.75;
  static constexpr double kSafety = 0.9;
  static constexpr double kMinShrink = 0.2;
  static constexpr double kMaxGrowth = 10.0;

  void allocate(std::size_t n) {
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &y_stage_, &y_new_, &r1_, &r2_,
                    &r3_, &r4_, &r5_, &dense_state_}) {
      v->assign(n, T{});
    }
  }

  void evaluate(double t, std::span<const T> y, std::vector<T>& out, OdeStats& stats) {
    rhs_(t, y, out);
    ++stats.rhs_evaluations;
  }

  double scale(const T& a, const T& b) const {
    return options_.abs_tol +
           options_.rel_tol * std::max(detail::magnitude(a), detail::magnitude(b));
  }

  double initial_step(double t, const std::vector<T>& y, OdeStats& stats) {
    double d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double sk = scale(y[i], y[i]);
      d0 = std::max(d0, detail::magnitude(y[i]) / sk);
      d1 = std::max(d1, detail::magnitude(k1_[i]) / sk);
    }
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, options_.max_step);
    for (std::size_t i = 0; i < y.size(); ++i) y_stage_[i] = y[i] + h0 * k1_[i];
    evaluate(t + h0, y_stage_, k2_, stats);
    double d2 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      d2 = std::max(d2, detail::magnitude(k2_[i] - k1_[i]) / scale(y[i], y[i]));
    }
    d2 /= h0;
    const double denom = std::max(d1, d2);
    const double h1 = denom <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / denom, 0.2);
    return std::min(100.0 * h0, h1);
  }

  // One trial step from (t, y); fills k2..k7 and y_new_ and returns the
  // scaled max-norm error estimate.
  double attempt(double t, double h, const std::vector<T>& y, OdeStats& stats) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) y_stage_[i] = y[i] + h * (kA21 * k1_[i]);
    evaluate(t + kC2 * h, y_stage_, k2_, stats);
    for (std::size_t i = 0; i < n; ++i) y_stage_[i] = y[i] + h * (kA31 * k1_[i] + kA32 * k2_[i]);
    evaluate(t + kC3 * h, y_stage_, k3_, stats);
    for (std::size_t i = 0; i < n; ++i) {
      y_stage_[i] = y[i] + h * (kA41 * k1_[i] + kA42 * k2_[i] + kA43 * k3_[i]);
    }
    evaluate(t + kC4 * h, y_stage_, k4_, stats);
    for (std::size_t i = 0; i < n; ++i) {
      y_stage_[i] = y[i] + h * (kA51 * k1_[i] + kA52 * k2_[i] + kA53 * k3_[i] + kA54 * k4_[i]);
    }
    evaluate(t + kC5 * h, y_stage_, k5_, stats);
    for (std::size_t i = 0; i < n; ++i) {
      y_stage_[i] = y[i] + h * (kA61 * k1_[i] + kA62 * k2_[i] + kA63 * k3_[i] + kA64 * k4_[i] +
                                kA65 * k5_[i]);
    }
    evaluate(t + h, y_stage_, k6_, stats);
    for (std::size_t i = 0; i < n; ++i) {
      y_new_[i] = y[i] + h * (kA71 * k1_[i] + kA73 * k3_[i] + kA74 * k4_[i] + kA75 * k5_[i] +
                              kA76 * k6_[i]);
    }
    evaluate(t + h, y_new_, k7_, stats);

    double error = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const T e = h * (kE1 * k1_[i] + kE3 * k3_[i] + kE4 * k4_[i] + kE5 * k5_[i] + kE6 * k6_[i] +
                       kE7 * k7_[i]);
      if (!detail::finite(y_new_[i])) return std::numeric_limits<double>::quiet_NaN();
      error = std::max(error, detail::magnitude(e) / scale(y[i], y_new_[i]));
    }
    // Keep the start state for dense output.
    for (std::size_t i = 0; i < n; ++i) r1_[i] = y[i];
    return error;
  }

  void dense_coefficients(double h) {
    for (std::size_t i = 0; i < r1_.size(); ++i) {
      const T diff = y_new_[i] - r1_[i];
      const T bspl = h * k1_[i] - diff;
      r2_[i] = diff;
      r3_[i] = bspl;
      r4_[i] = diff - h * k7_[i] - bspl;
      r5_[i] = h * (kD1 * k1_[i] + kD3 * k3_[i] + kD4 * k4_[i] + kD5 * k5_[i] + kD6 * k6_[i] +
                    kD7 * k7_[i]);
    }
  }

  void interpolate(double t_old, double h, double t, std::vector<T>& out) const {
    const double theta = (t - t_old) / h;
    const double theta1 = 1.0 - theta;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = r1_[i] + theta * (r2_[i] + theta1 * (r3_[i] + theta * (r4_[i] + theta1 * r5_[i])));
    }
  }

  static constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
  static constexpr double kA21 = 1.0 / 5;
  static constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
  static constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
  static constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                          kA54 = -212.0 / 729;
  static constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                          kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
  static constexpr double kA71 = 35.0 / 384, kA73 = 500.0 / 1113, kA74 = 125.0 / 192,
                          kA75 = -2187.0 / 6784, kA76 = 11.0 / 84;
  static constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                          kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
  static constexpr double kD1 = -12715105075.0 / 11282082432.0,
                          kD3 = 87487479700.0 / 32700410799.0,
                          kD4 = -10690763975.0 / 1880347072.0,
                          kD5 = 701980252875.0 / 199316789632.0,
                          kD6 = -1453857185.0 / 822651844.0, kD7 = 69997945.0 / 29380423.0;

  Rhs rhs_;
  OdeOptions options_;
  std::vector<T> k1_, k2_, k3_, k4_, k5_, k6_, k7_, y_stage_, y_new_;
  std::vector<T> r1_, r2_, r3_, r4_, r5_, dense_state_;
};

}  // namespace fracwave
