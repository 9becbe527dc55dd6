#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iccr/montecarlo.hpp"
#include "iccr/regions.hpp"
#include "iccr/serialize.hpp"

namespace {

using namespace iccr;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  int mt = 0, mc = 0, mr = 0;
  std::string mode = "csit";
  bool no_relay_feedback = false;
  int trials = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

void add_config_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--mt", f.mt, "transmitter antennas (per user)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mc", f.mc, "relay antennas")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--mr", f.mr, "receiver antennas (per user)")
      ->required()
      ->check(CLI::PositiveNumber);
}

void add_mode_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--mode", f.mode, "feedback mode")
      ->check(CLI::IsMember({"csit", "output", "shannon", "none"}))
      ->capture_default_str();
  cmd->add_flag("--no-relay-feedback", f.no_relay_feedback,
                "delayed feedback reaches the transmitters only");
}

void add_output_flags(CLI::App* cmd, CommonFlags& f, bool csv_allowed) {
  cmd->add_option("--out", f.out, "write output to this file (default: stdout)");
  auto* opt = cmd->add_option("--format", f.format, "output format")->capture_default_str();
  opt->check(csv_allowed ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
}

FeedbackMode parse_mode(const CommonFlags& f) {
  FeedbackMode m;
  if (f.mode == "csit") m.kind = FeedbackKind::DelayedCsit;
  else if (f.mode == "output") m.kind = FeedbackKind::DelayedOutput;
  else if (f.mode == "shannon") m.kind = FeedbackKind::DelayedShannon;
  else m.kind = FeedbackKind::NoFeedback;
  m.relay_has_feedback = m.kind != FeedbackKind::NoFeedback && !f.no_relay_feedback;
  return m;
}

// --out paths resolve against $ICCR_OUT_DIR when relative
int write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::filesystem::path path(out);
  if (const char* dir = std::getenv("ICCR_OUT_DIR"); dir && *dir && path.is_relative())
    path = std::filesystem::path(dir) / path;
  std::ofstream file(path);
  if (!file) {
    std::cerr << "cannot open output file: " << path.string() << "\n";
    return kExitUsage;
  }
  file << text;
  return kExitOk;
}

int emit(const Json& j, const CommonFlags& f) { return write_output(j.dump(2) + "\n", f.out); }

int run_region(const CommonFlags& f, const std::string& regime) {
  AntennaConfig cfg{f.mt, f.mc, f.mr};
  Polytope2D poly;
  if (regime == "csi") poly = region_csi(cfg);
  else if (regime == "output") poly = region_output(cfg);
  else if (regime == "shannon") poly = region_shannon(cfg);
  else if (regime == "outer") poly = region_outer_delayed(cfg);
  else if (regime == "no") poly = region_no(cfg);
  else if (regime == "no-cr-feedback") poly = region_no_cr_feedback(cfg);
  else {  // perfect feedback is only characterized for single antennas everywhere
    if (!(cfg == AntennaConfig{1, 1, 1})) {
      std::cerr << "--regime perfect requires --mt 1 --mc 1 --mr 1\n";
      return kExitUsage;
    }
    poly = region_perfect_siso();
  }
  Json j = region_json(poly);
  j["config"] = config_json(cfg);
  j["regime"] = regime;
  return emit(j, f);
}

int run_simulate(const CommonFlags& f, double snr_db, bool noisy) {
  TrialBatchSpec spec;
  spec.config = {f.mt, f.mc, f.mr};
  spec.mode = parse_mode(f);
  spec.trials = f.trials;
  spec.base_seed = f.seed;
  if (noisy) spec.noise = NoiseSpec{true, snr_db};
  BatchStats stats = run_batch(spec);
  if (f.format == "csv") return write_output(batch_csv(stats), f.out);
  Json j = batch_json(stats);
  j["base_seed"] = spec.base_seed;
  j["noise"] = noisy ? Json{{"enabled", true}, {"snr_db", snr_db}}
                     : Json{{"enabled", false}, {"snr_db", 0.0}};
  return emit(j, f);
}

int run_sweep(const CommonFlags& f, const std::vector<double>& snr) {
  TrialBatchSpec spec;
  spec.config = {f.mt, f.mc, f.mr};
  spec.mode = parse_mode(f);
  spec.trials = f.trials;
  spec.base_seed = f.seed;
  SweepResult res = estimate_dof_sweep(spec, snr);
  if (f.format == "csv") return write_output(sweep_csv(res), f.out);
  Json j = sweep_json(res);
  j["base_seed"] = spec.base_seed;
  return emit(j, f);
}

int run_table2(const CommonFlags& f) {
  AntennaConfig cfg{f.mt, f.mc, f.mr};
  SumDofRow row = sum_dof_comparison(cfg);
  if (f.format == "csv") return write_output(sum_dof_csv(cfg, row), f.out);
  return emit(sum_dof_json(cfg, row), f);
}

int run_cognitive(const CommonFlags& f, int mcog) {
  CognitiveIcBounds bounds = cognitive_ic_bounds(f.mt, mcog, f.mr);
  return emit(cognitive_json(f.mt, mcog, f.mr, bounds), f);
}

// Cross-checks the simulated scheme against the exact region: the per-frame
// symbol rate must equal the region's symmetric vertex, and every
// well-conditioned trial must decode.
int run_verify(const CommonFlags& f) {
  TrialBatchSpec spec;
  spec.config = {f.mt, f.mc, f.mr};
  spec.mode = parse_mode(f);
  spec.trials = f.trials;
  spec.base_seed = f.seed;
  BatchStats stats = run_batch(spec);

  Polytope2D region;
  if (spec.mode.kind == FeedbackKind::NoFeedback) region = region_no(spec.config);
  else if (!spec.mode.relay_has_feedback) region = region_no_cr_feedback(spec.config);
  else region = region_csi(spec.config);

  Rational per_user(stats.symbols_per_user, stats.frame_length);
  Rational symmetric = region.diagonal_max();
  bool rate_ok = per_user == symmetric;
  bool decode_ok = stats.degenerate_count == 0 &&
                   stats.decodable_count == stats.trials - stats.filtered_count;
  Json j{{"config", config_json(spec.config)},
         {"mode", to_string(spec.mode)},
         {"condition", to_string(stats.condition)},
         {"per_user_streams", to_string(per_user)},
         {"region_symmetric", to_string(symmetric)},
         {"rate_matches_region", rate_ok},
         {"trials", stats.trials},
         {"decodable_count", stats.decodable_count},
         {"filtered_count", stats.filtered_count},
         {"degenerate_count", stats.degenerate_count},
         {"all_trials_decodable", decode_ok},
         {"ok", rate_ok && decode_ok}};
  int rc = emit(j, f);
  if (rc != kExitOk) return rc;
  return rate_ok && decode_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DoF regions and scheme simulation for the two-user interference "
               "channel with a cognitive relay under delayed feedback"};
  app.require_subcommand(1);

  CommonFlags region_f;
  std::string regime = "csi";
  auto* region_cmd = app.add_subcommand("region", "print a DoF region as JSON");
  add_config_flags(region_cmd, region_f);
  region_cmd->add_option("--regime", regime, "which region to compute")
      ->check(CLI::IsMember({"csi", "output", "shannon", "no", "perfect", "outer",
                             "no-cr-feedback"}))
      ->capture_default_str();
  add_output_flags(region_cmd, region_f, false);

  CommonFlags sim_f;
  sim_f.trials = 1000;
  double sim_snr = 0.0;
  auto* sim_cmd = app.add_subcommand("simulate", "run seeded decodability trials");
  add_config_flags(sim_cmd, sim_f);
  add_mode_flags(sim_cmd, sim_f);
  sim_cmd->add_option("--trials", sim_f.trials)->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_f.seed)->capture_default_str();
  auto* sim_snr_opt = sim_cmd->add_option("--snr", sim_snr, "inject noise at this SNR (dB)");
  add_output_flags(sim_cmd, sim_f, true);

  CommonFlags sweep_f;
  sweep_f.trials = 500;
  std::vector<double> sweep_snr;
  auto* sweep_cmd = app.add_subcommand("sweep", "finite-SNR rate sweep and DoF slope");
  add_config_flags(sweep_cmd, sweep_f);
  add_mode_flags(sweep_cmd, sweep_f);
  sweep_cmd->add_option("--trials", sweep_f.trials)->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_f.seed)->capture_default_str();
  sweep_cmd->add_option("--snr", sweep_snr, "SNR grid in dB (default 30,40,50,60)")
      ->delimiter(',');
  add_output_flags(sweep_cmd, sweep_f, true);

  CommonFlags table_f;
  auto* table_cmd = app.add_subcommand("table2", "sum-DoF comparison row for one config");
  add_config_flags(table_cmd, table_f);
  add_output_flags(table_cmd, table_f, true);

  CommonFlags cog_f;
  int mcog = 0;
  auto* cog_cmd = app.add_subcommand("cognitive-ic",
                                     "DoF bounds for the cognitive interference channel");
  cog_cmd->add_option("--mt", cog_f.mt, "plain transmitter antennas")
      ->required()
      ->check(CLI::PositiveNumber);
  cog_cmd->add_option("--mcog", mcog, "cognitive transmitter antennas")
      ->required()
      ->check(CLI::PositiveNumber);
  cog_cmd->add_option("--mr", cog_f.mr, "receiver antennas")
      ->required()
      ->check(CLI::PositiveNumber);
  add_output_flags(cog_cmd, cog_f, false);

  CommonFlags verify_f;
  verify_f.trials = 64;
  auto* verify_cmd = app.add_subcommand(
      "verify", "check the simulated scheme against the exact region");
  add_config_flags(verify_cmd, verify_f);
  add_mode_flags(verify_cmd, verify_f);
  verify_cmd->add_option("--trials", verify_f.trials)->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_f.seed)->capture_default_str();
  add_output_flags(verify_cmd, verify_f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (region_cmd->parsed()) return run_region(region_f, regime);
    if (sim_cmd->parsed()) return run_simulate(sim_f, sim_snr, sim_snr_opt->count() > 0);
    if (sweep_cmd->parsed()) return run_sweep(sweep_f, sweep_snr);
    if (table_cmd->parsed()) return run_table2(table_f);
    if (cog_cmd->parsed()) return run_cognitive(cog_f, mcog);
    if (verify_cmd->parsed()) return run_verify(verify_f);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
