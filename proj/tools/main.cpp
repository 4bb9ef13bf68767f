#include <CLI11.hpp>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include "bobench/config.hpp"
#include "bobench/runner.hpp"
#include "bobench/testbed.hpp"

namespace fs = std::filesystem;
using namespace bobench;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string profile = "desk";
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int runs = 0;
  int workers = 0;
};

ExperimentConfig resolve_config(const CommonFlags& flags) {
  ExperimentConfig cfg = flags.config_path.empty()
                             ? ExperimentConfig::profile(flags.profile)
                             : ExperimentConfig::load(flags.config_path);
  if (flags.seed_set) cfg.master_seed = flags.seed;
  if (flags.runs > 0) cfg.runs = flags.runs;
  if (flags.workers > 0) cfg.workers = flags.workers;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config file");
  cmd->add_option("--profile", flags.profile, "built-in profile (desk|paper)")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--seed", flags.seed, "master seed")
      ->each([&](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--runs", flags.runs, "independent runs per triple");
  cmd->add_option("--workers", flags.workers, "worker threads");
  cmd->add_option("--out", flags.out_dir, "output directory");
}

int cmd_list(bool as_json) {
  if (as_json) {
    json manifest;
    manifest["problems"] = json::array();
    for (const auto& p : catalog()) {
      json pj;
      pj["name"] = p.name;
      pj["d"] = static_cast<int>(p.dim());
      pj["lower"] = vector_to_json(p.space.lower);
      pj["upper"] = vector_to_json(p.space.upper);
      pj["y_star"] = p.y_star;
      manifest["problems"].push_back(pj);
    }
    manifest["policy_kinds"] = json::array();
    for (PolicyKind k :
         {PolicyKind::cb_const, PolicyKind::cb_srinivas_t1,
          PolicyKind::cb_srinivas_t2, PolicyKind::cb_randomised,
          PolicyKind::eps_rs, PolicyKind::eps_pf, PolicyKind::pi,
          PolicyKind::ei, PolicyKind::pi_ei_alternating,
          PolicyKind::pi_ei_switching, PolicyKind::mastering})
      manifest["policy_kinds"].push_back(to_string(k));
    std::cout << manifest.dump(2) << "\n";
    return 0;
  }
  std::cout << "problems:\n";
  for (const auto& p : catalog()) {
    std::cout << "  " << std::left << std::setw(12) << p.name
              << " d=" << p.dim() << "  box=[" << p.space.lower.transpose()
              << "] .. [" << p.space.upper.transpose() << "]"
              << "  y*=" << std::setprecision(10) << p.y_star << "\n";
  }
  std::cout << "policy kinds:\n  cb_const cb_srinivas_t1 cb_srinivas_t2 "
               "cb_randomised eps_rs eps_pf pi ei pi_ei_alternating "
               "pi_ei_switching mastering\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimization benchmark harness"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run_cmd =
      app.add_subcommand("run", "execute an experiment (problems x policies x runs)");
  add_common(run_cmd, run_flags);

  CommonFlags metrics_flags;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "recompute summary tables from the traces of a bundle");
  metrics_cmd->add_option("--out", metrics_flags.out_dir, "bundle directory")
      ->required();

  CommonFlags plots_flags;
  auto* plots_cmd =
      app.add_subcommand("plots", "emit plot-data files from a bundle");
  plots_cmd->add_option("--out", plots_flags.out_dir, "bundle directory")
      ->required();

  std::string trace_file;
  auto* replay_cmd =
      app.add_subcommand("replay", "audit a noise-free trace by re-evaluation");
  replay_cmd->add_option("trace", trace_file, "trace file (.jsonl)")
      ->required();

  bool list_json = false;
  auto* list_cmd =
      app.add_subcommand("list", "show the problem catalog and policy kinds");
  list_cmd->add_flag("--json", list_json, "machine-readable manifest");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const ExperimentConfig cfg = resolve_config(run_flags);
      const ExperimentResult result = run_experiment(cfg, std::cout);
      return result.failed == 0 ? 0 : 1;
    }
    if (*metrics_cmd) {
      const ExperimentConfig cfg = load_bundle_config(metrics_flags.out_dir);
      write_summaries(cfg, metrics_flags.out_dir);
      std::cout << "summaries written under " << metrics_flags.out_dir << "\n";
      return 0;
    }
    if (*plots_cmd) {
      const ExperimentConfig cfg = load_bundle_config(plots_flags.out_dir);
      emit_plots(cfg, plots_flags.out_dir, std::cout);
      return 0;
    }
    if (*replay_cmd) {
      const ReplayReport report = replay_trace(trace_file);
      std::cout << "checked " << report.n_checked
                << " rows, max deviation " << report.max_abs_deviation << "\n"
                << report.status << "\n";
      return report.ok ? 0 : 1;
    }
    if (*list_cmd) return cmd_list(list_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
