#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using critic::cli::RunConfig;

namespace {

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_file) {
  cmd->add_option("--config", config_file, "JSON config file mirroring the flags");
  cmd->add_option("--map", cfg.map_file, "Henon map spec (JSON)");
  cmd->add_option("--orbit", cfg.orbit_file, "orbit file (JSON Lines)");
  cmd->add_option("--K", cfg.K, "criticality horizon");
  cmd->add_option("--N", cfg.N, "domination horizon");
  cmd->add_option("--slack", cfg.slack, "log-domain slack (default 1e-9*N + 1e-12)");
  cmd->add_option("--beta-grid", cfg.beta_grid, "beta grid, \"b-:b+,b-:b+,...\"");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--threads", cfg.threads,
                  "worker threads (env COCYCLE_CRITIC_THREADS as fallback)");
  cmd->add_option("--seed", cfg.seed, "seed recorded in the config fingerprint");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cocycle-critic: numerical machinery for 2-D complex linear "
               "cocycles over sampled Henon Julia sets"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_file;

  CLI::App* sample = app.add_subcommand(
      "sample-julia", "two-sided bounded grid sample of the Julia region");
  add_common_flags(sample, cfg, config_file);
  sample->add_option("--grid-n", cfg.grid_n, "grid resolution per axis (default 200)");
  sample->add_option("--iters", cfg.iters, "boundedness iterations (default 60)");
  sample->add_option("--R", cfg.radius, "manual filtration radius");

  CLI::App* detect = app.add_subcommand(
      "detect-critical", "scan sampled points for beta-critical directions");
  add_common_flags(detect, cfg, config_file);
  detect->add_option("--grid-n", cfg.grid_n, "grid resolution per axis");
  detect->add_option("--iters", cfg.iters, "boundedness iterations");
  detect->add_option("--R", cfg.radius, "manual filtration radius");
  detect->add_option("--julia", cfg.julia_file, "pre-sampled Julia points (JSON Lines)");
  detect->add_option("--periods", cfg.periods,
                     "include Newton periodic orbits up to this period (default 2)");

  CLI::App* dom = app.add_subcommand(
      "check-domination", "emit a finite-horizon domination certificate");
  add_common_flags(dom, cfg, config_file);
  dom->add_option("--grid-n", cfg.grid_n, "grid resolution per axis");
  dom->add_option("--iters", cfg.iters, "boundedness iterations");
  dom->add_option("--R", cfg.radius, "manual filtration radius");
  dom->add_option("--julia", cfg.julia_file, "pre-sampled Julia points (JSON Lines)");
  dom->add_option("--periods", cfg.periods, "include Newton periodic orbits");
  dom->add_option("--lambda", cfg.lambda, "required growth rate (default 1.5)");
  dom->add_option("--C", cfg.C, "certificate constant C (default 1)");

  CLI::App* pliss = app.add_subcommand(
      "pliss-times", "hyperbolic times of a positive factor sequence");
  add_common_flags(pliss, cfg, config_file);
  pliss->add_option("--seq", cfg.seq_file, "sequence file (CSV n,value or JSON)");
  pliss->add_option("--gamma1", cfg.gamma1, "Pliss rate gamma1 (default 1)");
  pliss->add_option("--gamma0", cfg.gamma0, "recorded gamma0");

  CLI::App* report = app.add_subcommand(
      "report", "summarize the JSON outputs in the output directory");
  add_common_flags(report, cfg, config_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? critic::cli::kExitOk
                                         : critic::cli::kExitUsage;
  }

  try {
    if (!config_file.empty()) critic::cli::apply_config_file(cfg, config_file);
    if (sample->parsed()) {
      cfg.command = "sample-julia";
      return critic::cli::cmd_sample_julia(cfg);
    }
    if (detect->parsed()) {
      cfg.command = "detect-critical";
      return critic::cli::cmd_detect_critical(cfg);
    }
    if (dom->parsed()) {
      cfg.command = "check-domination";
      return critic::cli::cmd_check_domination(cfg);
    }
    if (pliss->parsed()) {
      cfg.command = "pliss-times";
      return critic::cli::cmd_pliss(cfg);
    }
    if (report->parsed()) {
      cfg.command = "report";
      return critic::cli::cmd_report(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return critic::cli::kExitUsage;
  }
  return critic::cli::kExitUsage;
}
