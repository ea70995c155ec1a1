#include "fracwave/cli/app.hpp"

#include <algorithm>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fracwave/cli/artifacts.hpp"
#include "fracwave/cli/config.hpp"
#include "fracwave/error.hpp"
#include "fracwave/version.hpp"

namespace fracwave::cli {
namespace {

const std::vector<std::string> kDampingNames{"chi1", "chi2", "chi3", "constant", "zero", "custom"};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  // Consumed by expand_config before parsing; registered for --help.
  sub->add_option("--config", "Flat key=value file; keys are flag names without dashes");
  return sub;
}

void add_damping(CLI::App* sub, DampingOptions& o) {
  sub->add_option("--damping", o.damping, "Damping family")->check(CLI::IsMember(kDampingNames));
  sub->add_option("--nu", o.nu, "Damping amplitude")->check(CLI::NonNegativeNumber);
  sub->add_option("--grid", o.grid, "Grid size M (power of two)");
  sub->add_option("--damping-file", o.damping_file, "x,chi samples for --damping custom");
}

void add_simulation(CLI::App* sub, SimulateOptions& o) {
  add_damping(sub, o.damping);
  sub->add_option("--t-end", o.t_end, "Final time")->check(CLI::PositiveNumber);
  sub->add_option("--rtol", o.rel_tol, "Relative tolerance");
  sub->add_option("--atol", o.abs_tol, "Absolute tolerance");
  sub->add_option("--sample-dt", o.sample_dt, "Output sampling interval")->check(CLI::PositiveNumber);
  sub->add_option("--ic", o.ic, "Initial condition")
      ->check(CLI::IsMember({"localized-highfreq", "sine", "custom-modes"}));
  sub->add_option("--model", o.model, "Damping model")
      ->check(CLI::IsMember({"multiplicative", "half-wave"}));
  sub->add_option("--dealias", o.dealias, "Product evaluation")
      ->check(CLI::IsMember({"none", "three-halves"}));
  sub->add_option("--custom-mode", o.custom_modes, "n:u_re:u_im[:v_re:v_im], comma separated")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
}

// Canonical "key=value" listing of the effective options, for the header hash.
std::string effective_config(const CLI::App* sub) {
  std::map<std::string, std::string> values;
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (opt->get_multi_option_policy() == CLI::MultiOptionPolicy::TakeAll) {
        for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
      } else {
        value = results.back();
      }
    } else {
      value = opt->get_default_str();
    }
    values[name] = value;
  }
  std::string text = sub->get_name() + "\n";
  for (const auto& [k, v] : values) text += k + "=" + v + "\n";
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Damped fractional wave equation on the circle: simulation, decay fits, "
               "resonances and resolvent sweeps",
               "fracwave"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);

  SimulateOptions simulate;
  CLI::App* sim = add_command(app, "simulate", "Integrate in time and write t,energy,dissipation");
  add_simulation(sim, simulate);
  sim->add_option("--out", simulate.out, "Trajectory CSV")->required();

  DecayOptions decay;
  CLI::App* dec = add_command(app, "decay", "Integrate and fit E(t) ~ C t^-p");
  add_simulation(dec, decay.sim);
  dec->add_option("--t-min", decay.t_min, "Fit window start (default: last decade)");
  dec->add_option("--t-max", decay.t_max, "Fit window end");
  dec->add_option("--out", decay.out, "Fit JSON")->required();
  dec->add_option("--trajectory-out", decay.trajectory_out, "Optional trajectory CSV");

  ResonanceOptions res;
  CLI::App* rsn = add_command(app, "resonances", "Eigenvalues of the truncated pencil");
  add_damping(rsn, res.damping);
  rsn->add_option("--modes", res.modes, "Truncation N (modes |n| <= N)")->check(CLI::PositiveNumber);
  rsn->add_flag("--compare-asymptotic", res.compare_asymptotic, "Add the small-nu expansion and a match report");
  rsn->add_option("--k-max", res.k_max, "Largest k for the expansion");
  rsn->add_option("--out", res.out, "Resonance CSV")->required();
  rsn->add_option("--match-out", res.match_out, "Match report CSV (default <out>.match.csv)");

  ResolventOptions rv;
  CLI::App* rsl = add_command(app, "resolvent", "Sweep the truncated resolvent norm over real tau");
  add_damping(rsl, rv.damping);
  rsl->add_option("--tau-min", rv.tau_min, "Sweep start")->check(CLI::PositiveNumber);
  rsl->add_option("--tau-max", rv.tau_max, "Sweep end")->check(CLI::PositiveNumber);
  rsl->add_option("--steps", rv.steps, "Number of samples");
  rsl->add_option("--modes", rv.modes, "Truncation N")->check(CLI::PositiveNumber);
  rsl->add_option("--spacing", rv.spacing, "Sample spacing")->check(CLI::IsMember({"log", "uniform"}));
  rsl->add_option("--scale", rv.scale, "Reported norm")->check(CLI::IsMember({"physical", "semiclassical"}));
  rsl->add_flag("--allow-unreliable", rv.allow_unreliable, "Permit tau_max^2 > N/2 (samples are flagged)");
  rsl->add_option("--out", rv.out, "Sweep CSV")->required();
  rsl->add_option("--summary-out", rv.summary_out, "Summary JSON (default <out>.summary.json)");

  QuasimodeOptions qm;
  CLI::App* qsm = add_command(app, "quasimode", "Quasimode ratios a e^{ikx} against resolvent norms");
  add_damping(qsm, qm.damping);
  qsm->add_option("--k", qm.k, "Frequencies, comma separated")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  qsm->add_option("--bump-center", qm.bump_center, "Amplitude bump centre");
  qsm->add_option("--bump-radius", qm.bump_radius, "Amplitude bump radius");
  qsm->add_option("--modes", qm.modes, "Resolvent truncation N (0: 4k)");
  qsm->add_option("--out", qm.out, "Quasimode CSV")->required();

  SelftestOptions st;
  CLI::App* slf = add_command(app, "selftest", "Quick internal consistency checks");
  slf->add_option("--seed", st.seed, "Seed for random test vectors");

  try {
    std::vector<std::string> expanded = expand_config(args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsageError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const RunContext ctx{chosen->get_name(), hash_hex(fnv1a(effective_config(chosen))), out};
  try {
    if (chosen == sim) return run_simulate(simulate, ctx);
    if (chosen == dec) return run_decay(decay, ctx);
    if (chosen == rsn) return run_resonances(res, ctx);
    if (chosen == rsl) return run_resolvent(rv, ctx);
    if (chosen == qsm) return run_quasimode(qm, ctx);
    return run_selftest(st, ctx);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace fracwave::cli
