// Command-line front end. Links only the C interface of libswarmkit.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swarmkit/swarmkit.h"

namespace {

int exit_code(swk_status s) {
  switch (s) {
    case SWK_OK: return 0;
    case SWK_ERR_CONFIG:
    case SWK_ERR_INVALID_ARGUMENT:
    case SWK_ERR_DOMAIN:
    case SWK_ERR_INDEX: return 1;
    case SWK_ERR_IO: return 3;
    default: return 2;
  }
}

int report(swk_status s) {
  std::fprintf(stderr, "error (%s): %s\n", swk_status_name(s), swk_last_error());
  return exit_code(s);
}

struct ConfigHandle {
  swk_config* ptr = nullptr;
  ~ConfigHandle() { swk_config_free(ptr); }
};

struct TrajectoryHandle {
  swk_trajectory* ptr = nullptr;
  ~TrajectoryHandle() { swk_trajectory_free(ptr); }
};

struct SimulateArgs {
  std::string source;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<double> duration;
  std::string out;
  unsigned threads = 1;
};

int simulate(const SimulateArgs& a) {
  ConfigHandle cfg;
  swk_status s = swk_config_resolve(a.source.c_str(), &cfg.ptr);
  if (s != SWK_OK) return report(s);
  if (a.seed && (s = swk_config_set_seed(cfg.ptr, *a.seed)) != SWK_OK) return report(s);
  if (a.dt && (s = swk_config_set_dt(cfg.ptr, *a.dt)) != SWK_OK) return report(s);
  if (a.duration && (s = swk_config_set_duration(cfg.ptr, *a.duration)) != SWK_OK) {
    return report(s);
  }

  TrajectoryHandle traj;
  if ((s = swk_run(cfg.ptr, a.threads, &traj.ptr)) != SWK_OK) return report(s);

  const size_t snaps = swk_trajectory_snapshot_count(traj.ptr);
  swk_metrics last{};
  swk_trajectory_metrics(traj.ptr, snaps - 1, &last);
  double d_min = last.d_min;
  for (size_t k = 0; k < snaps; ++k) {
    swk_metrics m{};
    swk_trajectory_metrics(traj.ptr, k, &m);
    if (m.d_min < d_min) d_min = m.d_min;
  }
  std::printf("snapshots=%zu agents=%zu t_final=%.6g h_final=%s r_agg_final=%.6g "
              "d_min_overall=%.6g events=%zu\n",
              snaps, swk_trajectory_agent_count(traj.ptr), last.time,
              last.has_h ? std::to_string(last.h).c_str() : "n/a", last.r_agg, d_min,
              swk_trajectory_event_count(traj.ptr));

  if (!a.out.empty()) {
    if ((s = swk_export_run(traj.ptr, cfg.ptr, a.out.c_str())) != SWK_OK) return report(s);
    std::printf("wrote %s/{trajectory.csv,metrics.csv,events.csv,config.json}\n",
                a.out.c_str());
  }
  return 0;
}

int sweep(const std::string& spec, const std::string& out_dir, unsigned workers) {
  if (out_dir.empty()) {
    char* csv = nullptr;
    size_t failed = 0;
    const swk_status s = swk_sweep_csv(spec.c_str(), workers, &csv, &failed);
    if (s != SWK_OK) return report(s);
    std::fputs(csv, stdout);
    swk_string_free(csv);
    if (failed > 0) std::fprintf(stderr, "%zu cells failed\n", failed);
    return failed > 0 ? 2 : 0;
  }
  size_t rows = 0, failed = 0;
  const swk_status s = swk_sweep_run(spec.c_str(), workers, out_dir.c_str(), &rows, &failed);
  if (s != SWK_OK) return report(s);
  std::printf("wrote %zu rows to %s/sweep.csv\n", rows, out_dir.c_str());
  if (failed > 0) {
    std::fprintf(stderr, "%zu cells failed, see %s/sweep_errors.csv\n", failed,
                 out_dir.c_str());
    return 2;
  }
  return 0;
}

int validate(const std::string& source) {
  ConfigHandle cfg;
  const swk_status s = swk_config_resolve(source.c_str(), &cfg.ptr);
  if (s != SWK_OK) return report(s);
  size_t n = 0, dim = 0, steps = 0;
  swk_config_get_agent_count(cfg.ptr, &n);
  swk_config_get_dim(cfg.ptr, &dim);
  swk_config_get_step_count(cfg.ptr, &steps);
  std::printf("ok: n=%zu dim=%zu steps=%zu\n", n, dim, steps);
  return 0;
}

int list_presets() {
  for (size_t k = 0; k < swk_preset_count(); ++k) {
    std::printf("%-30s %s\n", swk_preset_name(k), swk_preset_note(k));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmkit: offset-based swarm simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "run a preset or config file");
  simulate_cmd->add_option("source", sim.source, "preset name or JSON config path")->required();
  simulate_cmd->add_option("--seed", sim.seed, "override the RNG seed");
  simulate_cmd->add_option("--dt", sim.dt, "override the time step (s)");
  simulate_cmd->add_option("--duration", sim.duration, "override the duration (s)");
  simulate_cmd->add_option("--out", sim.out, "output directory for CSV and config echo");
  simulate_cmd->add_option("--threads", sim.threads, "worker threads for force evaluation")
      ->check(CLI::PositiveNumber);

  std::string sweep_spec, sweep_out;
  unsigned sweep_workers = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  sweep_cmd->add_option("spec", sweep_spec, "built-in sweep name or JSON spec path")
      ->required();
  sweep_cmd->add_option("--out-dir", sweep_out, "directory for sweep.csv (stdout if omitted)");
  sweep_cmd->add_option("--workers", sweep_workers, "cells run concurrently")
      ->check(CLI::PositiveNumber);

  std::string validate_source;
  auto* validate_cmd = app.add_subcommand("validate", "check a config without running it");
  validate_cmd->add_option("config", validate_source, "preset name or JSON config path")
      ->required();

  auto* list_cmd = app.add_subcommand("list-presets", "print the available presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*simulate_cmd) return simulate(sim);
  if (*sweep_cmd) return sweep(sweep_spec, sweep_out, sweep_workers);
  if (*validate_cmd) return validate(validate_source);
  if (*list_cmd) return list_presets();
  return 1;
}
