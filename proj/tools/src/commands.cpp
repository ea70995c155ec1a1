#include "commands.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "fracwave/cli/artifacts.hpp"
#include "fracwave/damping.hpp"
#include "fracwave/decay.hpp"
#include "fracwave/error.hpp"
#include "fracwave/evolution.hpp"
#include "fracwave/resolvent.hpp"
#include "fracwave/resonance.hpp"
#include "json.hpp"

namespace fracwave::cli {
namespace {

using nlohmann::ordered_json;

DampingProfile unit_profile(const DampingOptions& o, const GridSpec& spec) {
  const DampingKind kind = parse_damping_kind(o.damping);
  if (kind == DampingKind::kCustom) {
    if (o.damping_file.empty()) throw InvalidArgument("damping 'custom' needs --damping-file");
    return load_profile_csv(o.damping_file, spec);
  }
  return make_profile(kind, 1.0, spec);
}

DampingProfile scaled_profile(const DampingOptions& o, const GridSpec& spec) {
  const DampingKind kind = parse_damping_kind(o.damping);
  if (kind != DampingKind::kCustom) return make_profile(kind, o.nu, spec);
  if (!(o.nu >= 0.0) || !std::isfinite(o.nu)) throw InvalidArgument("nu must be finite and >= 0");
  GridField samples = unit_profile(o, spec).samples();
  for (double& s : samples.values()) s *= o.nu;
  return make_custom_profile(std::move(samples));
}

// Grid large enough for a truncation at |n| <= N and, optionally, a
// quasimode at frequency k.
GridSpec grid_for(std::size_t requested, int N, int k = 0) {
  const auto need = static_cast<std::size_t>(std::max(4 * N, 8 * k));
  return GridSpec(std::max(requested, std::bit_ceil(std::max<std::size_t>(need, 8))));
}

std::vector<ModeAmplitude> parse_custom_modes(const std::vector<std::string>& entries) {
  std::vector<ModeAmplitude> modes;
  for (const auto& entry : entries) {
    std::vector<std::string> parts;
    std::stringstream ss(entry);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3 && parts.size() != 5) {
      throw InvalidArgument("custom mode '" + entry + "' must be n:u_re:u_im[:v_re:v_im]");
    }
    try {
      ModeAmplitude m;
      m.mode = std::stoi(parts[0]);
      m.u_hat = {std::stod(parts[1]), std::stod(parts[2])};
      if (parts.size() == 5) m.v_hat = {std::stod(parts[3]), std::stod(parts[4])};
      modes.push_back(m);
    } catch (const std::logic_error&) {
      throw InvalidArgument("custom mode '" + entry + "' is not numeric");
    }
  }
  return modes;
}

Dealiasing parse_dealias(const std::string& name) {
  if (name == "none") return Dealiasing::kNone;
  if (name == "three-halves") return Dealiasing::kThreeHalves;
  throw InvalidArgument("unknown dealiasing '" + name + "'");
}

struct SimulationRun {
  Trajectory trajectory;
  DampingProfile profile;
};

SimulationRun simulate(const SimulateOptions& o) {
  const GridSpec spec(o.damping.grid);
  SimulationConfig cfg(scaled_profile(o.damping, spec));
  cfg.model = parse_damping_model(o.model);
  cfg.t_end = o.t_end;
  cfg.rel_tol = o.rel_tol;
  cfg.abs_tol = o.abs_tol;
  cfg.sample_dt = o.sample_dt;
  cfg.dealiasing = parse_dealias(o.dealias);
  const InitialCondition ic = parse_initial_condition(o.ic);
  const auto modes = parse_custom_modes(o.custom_modes);
  if (ic != InitialCondition::kCustomModes && !modes.empty()) {
    throw InvalidArgument("--custom-mode requires --ic custom-modes");
  }
  Trajectory traj = integrate(initial_condition(ic, spec, modes), cfg);
  return {std::move(traj), cfg.damping};
}

std::string trajectory_csv(const Trajectory& traj, const RunContext& ctx) {
  std::string text = header_line(ctx.command, ctx.config_hash) + "\nt,energy,dissipation\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    text += format_number(traj.times[i]) + ',' + format_number(traj.energies[i]) + ',' +
            format_number(traj.dissipation[i]) + '\n';
  }
  return text;
}

void append_rows(std::string& text, const ResonanceSet& set) {
  for (const Complex& z : right_half_plane(set).values) {
    text += format_number(z.real()) + ',' + format_number(z.imag()) + ',' +
            std::string(to_string(set.method)) + ',' + std::to_string(set.N) + ',' +
            format_number(set.nu) + '\n';
  }
}

std::string optional_number(const std::optional<Complex>& z, bool imag) {
  if (!z) return {};
  return format_number(imag ? z->imag() : z->real());
}

std::string describe(Complex z) {
  return format_number(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         format_number(std::abs(z.imag())) + "i";
}

}  // namespace

int run_simulate(const SimulateOptions& opts, const RunContext& ctx) {
  const auto run = simulate(opts);
  const auto& traj = run.trajectory;
  write_atomic(opts.out, trajectory_csv(traj, ctx));
  ctx.out << "wrote " << opts.out << ": " << traj.times.size() << " samples, E(0) = "
          << format_number(traj.energies.front()) << ", E(" << format_number(traj.times.back())
          << ") = " << format_number(traj.energies.back()) << ", " << traj.stats.accepted
          << " steps\n";
  return 0;
}

int run_decay(const DecayOptions& opts, const RunContext& ctx) {
  const auto run = simulate(opts.sim);
  const auto& traj = run.trajectory;
  FitWindow window = default_window(traj);
  if (opts.t_min > 0.0 || opts.t_max > 0.0) {
    window.t_min = opts.t_min > 0.0 ? opts.t_min : window.t_min;
    window.t_max = opts.t_max > 0.0 ? opts.t_max : traj.times.back();
  }
  const DecayFit fit = fit_exponent(traj, window);

  ordered_json doc;
  doc["header"] = header_line(ctx.command, ctx.config_hash);
  doc["window"] = {fit.window.t_min, fit.window.t_max};
  doc["exponent"] = fit.exponent;
  doc["residual"] = fit.residual;
  doc["samples"] = fit.samples;
  try {
    const PredictedRate predicted = predicted_exponent(run.profile);
    doc["predicted"] = predicted.exponent ? ordered_json(*predicted.exponent) : ordered_json();
    doc["exponential"] = predicted.exponential;
    doc["classification"] = to_string(predicted.classification);
  } catch (const DomainError&) {
    doc["predicted"] = nullptr;
    doc["exponential"] = false;
    doc["classification"] = to_string(run.profile.classification());
  }
  write_atomic(opts.out, doc.dump(2) + "\n");
  if (!opts.trajectory_out.empty()) write_atomic(opts.trajectory_out, trajectory_csv(traj, ctx));
  ctx.out << "exponent " << format_number(fit.exponent) << " over ["
          << format_number(fit.window.t_min) << ", " << format_number(fit.window.t_max)
          << "], classification " << doc["classification"].get<std::string>() << "\n";
  return 0;
}

int run_resonances(const ResonanceOptions& opts, const RunContext& ctx) {
  if (opts.k_max < 1) throw InvalidArgument("--k-max must be >= 1");
  const GridSpec spec = grid_for(opts.damping.grid, opts.modes);
  const DampingProfile profile = unit_profile(opts.damping, spec);
  const ResonanceSet pencil = pencil_resonances(build_pencil(profile, opts.damping.nu, opts.modes));

  std::string text = header_line(ctx.command, ctx.config_hash) + "\nre,im,method,N,nu\n";
  append_rows(text, pencil);
  if (opts.compare_asymptotic) {
    const ResonanceSet asym = asymptotic_resonances(profile, opts.damping.nu, opts.k_max);
    append_rows(text, asym);

    ComplexRegion region;
    region.re_min = 0.5;
    region.re_max = 0.5 * (std::sqrt(opts.k_max) + std::sqrt(opts.k_max + 1.0));
    const auto matches = match_resonances(right_half_plane(pencil), right_half_plane(asym), region);
    std::string report = header_line(ctx.command, ctx.config_hash) +
                         "\npencil_re,pencil_im,asymptotic_re,asymptotic_im,distance\n";
    for (const auto& m : matches) {
      report += optional_number(m.a, false) + ',' + optional_number(m.a, true) + ',' +
                optional_number(m.b, false) + ',' + optional_number(m.b, true) + ',' +
                (m.paired() ? format_number(m.distance) : std::string()) + '\n';
    }
    const auto match_path =
        opts.match_out.empty() ? sibling_path(opts.out, ".match.csv") : std::filesystem::path(opts.match_out);
    write_atomic(match_path, report);
    ctx.out << "wrote match report " << match_path.string() << "\n";
  }
  write_atomic(opts.out, text);
  if (const auto slow = slowest_nonzero(right_half_plane(pencil))) {
    ctx.out << "slowest nonzero resonance " << describe(*slow) << "\n";
  }
  return 0;
}

int run_resolvent(const ResolventOptions& opts, const RunContext& ctx) {
  SweepConfig cfg;
  cfg.tau_min = opts.tau_min;
  cfg.tau_max = opts.tau_max;
  cfg.steps = opts.steps;
  cfg.N = opts.modes;
  cfg.nu = opts.damping.nu;
  cfg.allow_unreliable = opts.allow_unreliable;
  if (opts.spacing == "log") {
    cfg.spacing = SweepSpacing::kLogarithmic;
  } else if (opts.spacing == "uniform") {
    cfg.spacing = SweepSpacing::kUniform;
  } else {
    throw InvalidArgument("unknown spacing '" + opts.spacing + "'");
  }
  if (opts.scale == "physical") {
    cfg.scale = SweepScale::kPhysical;
  } else if (opts.scale == "semiclassical") {
    cfg.scale = SweepScale::kSemiclassical;
  } else {
    throw InvalidArgument("unknown scale '" + opts.scale + "'");
  }
  cfg.validate();

  const DampingProfile profile = unit_profile(opts.damping, grid_for(opts.damping.grid, opts.modes));
  const SweepResult result = sweep(profile, cfg);

  std::string text = header_line(ctx.command, ctx.config_hash) + "\ntau_re,tau_im,norm,N,flagged\n";
  for (const auto& s : result.samples) {
    text += format_number(s.tau.real()) + ',' + format_number(s.tau.imag()) + ',' +
            format_number(s.norm.value_or(INFINITY)) + ',' + std::to_string(s.N) + ',' +
            (s.flagged ? "1" : "0") + '\n';
  }

  const auto& sum = result.summary;
  ordered_json doc;
  doc["header"] = header_line(ctx.command, ctx.config_hash);
  doc["max_norm"] = sum.max_norm;
  doc["slope"] = sum.slope;
  doc["window"] = {sum.tau_lo, sum.tau_hi};
  doc["min_norm"] = sum.min_norm;
  doc["used"] = sum.used;
  doc["flagged"] = sum.flagged;
  doc["near_resonance"] = sum.near_resonance;

  const auto summary_path = opts.summary_out.empty() ? sibling_path(opts.out, ".summary.json")
                                                     : std::filesystem::path(opts.summary_out);
  write_atomic(opts.out, text);
  write_atomic(summary_path, doc.dump(2) + "\n");
  ctx.out << "max norm " << format_number(sum.max_norm) << ", slope " << format_number(sum.slope)
          << " over " << sum.used << " samples; summary in " << summary_path.string() << "\n";
  return 0;
}

int run_quasimode(const QuasimodeOptions& opts, const RunContext& ctx) {
  if (opts.k.empty()) throw InvalidArgument("--k needs at least one frequency");
  std::string text = header_line(ctx.command, ctx.config_hash) + "\nk,ratio,resolvent_norm,N,flagged\n";
  for (int k : opts.k) {
    if (k < 1) throw InvalidArgument("quasimode frequencies must be >= 1");
    const int N = opts.modes > 0 ? opts.modes : 4 * k;
    const GridSpec spec = grid_for(opts.damping.grid, N, k);
    const DampingProfile profile = unit_profile(opts.damping, spec);
    const DampingProfile bump = bump_function(opts.bump_center, opts.bump_radius, spec);
    const double ratio = quasimode_ratio(profile, opts.damping.nu, bump, k);
    const ResolventSample s =
        resolvent_norm(build_pencil(profile, opts.damping.nu, N), Complex(std::sqrt(k), 0.0));
    text += std::to_string(k) + ',' + format_number(ratio) + ',' +
            format_number(s.norm.value_or(INFINITY)) + ',' + std::to_string(N) + ',' +
            (s.flagged ? "1" : "0") + '\n';
    ctx.out << "k = " << k << ": ratio " << format_number(ratio) << ", resolvent norm "
            << format_number(s.norm.value_or(INFINITY)) << "\n";
  }
  write_atomic(opts.out, text);
  return 0;
}

int run_selftest(const SelftestOptions& opts, const RunContext& ctx) {
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  int failures = 0;
  auto report = [&](const char* name, bool ok, double value) {
    ctx.out << (ok ? "PASS " : "FAIL ") << name << " (" << format_number(value) << ")\n";
    if (!ok) ++failures;
  };
  auto max_distance = [](const ResonanceSet& a, const ResonanceSet& b) {
    double worst = a.values.size() == b.values.size() ? 0.0 : INFINITY;
    for (const auto& m : match_resonances(a, b, ComplexRegion{})) {
      worst = std::max(worst, m.paired() ? m.distance : INFINITY);
    }
    return worst;
  };

  {
    const GridSpec spec(64);
    std::vector<double> values(spec.size());
    for (double& v : values) v = gauss(rng);
    const GridField field(spec, values);
    const GridField back = to_grid(to_modes(field));
    double err = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) err = std::max(err, std::abs(back[j] - values[j]));
    report("fourier-roundtrip", err < 1e-12, err);
  }
  {
    const GridSpec spec(64);
    SimulationConfig cfg(make_profile(DampingKind::kZero, 0.0, spec));
    cfg.t_end = 10.0;
    StateVector state{ModeField(spec), ModeField(spec)};
    state.u.set(1, 0.5);
    state.u.set(-1, 0.5);
    const Trajectory traj = integrate(state, cfg);
    double drift = 0.0;
    for (double e : traj.energies) drift = std::max(drift, std::abs(e / traj.energies.front() - 1.0));
    report("energy-conservation", drift < 1e-6, drift);
  }
  {
    const GridSpec spec(64);
    const int N = 6;
    const auto zero = pencil_resonances(build_pencil(make_profile(DampingKind::kZero, 0.0, spec), 1.0, N));
    report("undamped-pencil", max_distance(zero, constant_damping_resonances(0.0, N)) < 1e-10,
           max_distance(zero, constant_damping_resonances(0.0, N)));
    const auto constant = pencil_resonances(build_pencil(make_profile(DampingKind::kConstant, 1.0, spec), 0.5, N));
    const double d = max_distance(constant, constant_damping_resonances(0.5, N));
    report("constant-damping-pencil", d < 1e-10, d);
  }
  {
    const GridSpec spec(256);
    const DampingProfile chi3 = make_profile(DampingKind::kChi3, 0.25, spec);
    const double h = 0.1;
    const double line = -chi3.fourier_coefficient(0).real() * std::sqrt(h) / 2.0;
    double worst = 0.0;
    for (const Complex& z : transport_resonances(chi3, h).values) {
      worst = std::max(worst, std::min(std::abs(z.real()), std::abs(z.imag() - line)));
    }
    report("transport-lines", worst < 1e-12, worst);
  }
  {
    const GridSpec spec(128);
    const DampingProfile chi1 = make_profile(DampingKind::kChi1, 1.0, spec);
    std::uniform_real_distribution<double> u(0.3, 0.9);
    const double h = u(rng) * 0.1;
    const Complex z(u(rng), -0.01);
    const int N = 24;
    const double lhs = h * semiclassical_norm(chi1, 0.25, h, z, N);
    const auto rhs = resolvent_norm(build_pencil(chi1, 0.25, N), z / std::sqrt(h)).norm.value_or(INFINITY);
    const double rel = std::abs(lhs - rhs) / rhs;
    report("semiclassical-scaling", rel < 1e-10, rel);
  }
  ctx.out << (failures == 0 ? "selftest passed\n" : "selftest failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace fracwave::cli
