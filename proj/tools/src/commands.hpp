#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fracwave::cli {

// The damping applied is nu * chi, where chi is the unit-amplitude member of
// the named family or the profile read from damping_file.
struct DampingOptions {
  std::string damping = "chi3";
  double nu = 0.25;
  std::size_t grid = 512;
  std::string damping_file;
};

struct SimulateOptions {
  DampingOptions damping;
  double t_end = 1000.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  double sample_dt = 1.0;
  std::string ic = "localized-highfreq";
  std::string model = "multiplicative";
  std::string dealias = "none";
  // "n:u_re:u_im[:v_re:v_im]" per entry, for ic = custom-modes.
  std::vector<std::string> custom_modes;
  std::string out;
};

struct DecayOptions {
  SimulateOptions sim;  // sim.out unused
  double t_min = 0.0;   // 0 selects the default window
  double t_max = 0.0;
  std::string out;
  std::string trajectory_out;
};

struct ResonanceOptions {
  DampingOptions damping;
  int modes = 12;
  bool compare_asymptotic = false;
  int k_max = 3;
  std::string out;
  std::string match_out;
};

struct ResolventOptions {
  DampingOptions damping;
  double tau_min = 6.0;
  double tau_max = 15.0;
  std::size_t steps = 200;
  int modes = 256;
  std::string spacing = "log";
  std::string scale = "physical";
  bool allow_unreliable = false;
  std::string out;
  std::string summary_out;
};

struct QuasimodeOptions {
  DampingOptions damping;
  std::vector<int> k{16, 64};
  double bump_center = 0.0;
  double bump_radius = 0.5;
  int modes = 0;  // 0 picks N = 4k per k
  std::string out;
};

struct SelftestOptions {
  std::uint64_t seed = 1;
};

struct RunContext {
  std::string command;
  std::string config_hash;
  std::ostream& out;
};

int run_simulate(const SimulateOptions& opts, const RunContext& ctx);
int run_decay(const DecayOptions& opts, const RunContext& ctx);
int run_resonances(const ResonanceOptions& opts, const RunContext& ctx);
int run_resolvent(const ResolventOptions& opts, const RunContext& ctx);
int run_quasimode(const QuasimodeOptions& opts, const RunContext& ctx);
int run_selftest(const SelftestOptions& opts, const RunContext& ctx);

}  // namespace fracwave::cli
