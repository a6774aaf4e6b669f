#pragma once

// Scenario files, presets, parameter sweeps and CSV export.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmkit/engine.hpp"

namespace swarmkit::lab {

// ---- config files -------------------------------------------------------

/// Parses a JSON scenario. Unknown keys are Config errors; missing keys keep
/// their defaults. The result is validated.
engine::SimConfig parse_config(std::string_view text);
engine::SimConfig load_config(const std::filesystem::path& path);

/// Pretty-printed JSON with round-trip double precision.
std::string dump_config(const engine::SimConfig& config);
void save_config(const engine::SimConfig& config, const std::filesystem::path& path);

// ---- presets ------------------------------------------------------------

struct ScenarioPreset {
  std::string name;
  engine::SimConfig config;
  std::string note;
};

const std::vector<ScenarioPreset>& presets();

/// Throws a Config error listing the available names when `name` is unknown.
const ScenarioPreset& preset(std::string_view name);

/// Preset name or path to a JSON scenario file.
engine::SimConfig resolve_config(std::string_view preset_or_path);

// ---- sweeps -------------------------------------------------------------

struct SweepSpec {
  engine::SimConfig base;
  std::vector<double> eta;
  std::vector<std::size_t> n;
  std::vector<double> delta;  // empty keeps base delta and omits the column
  std::vector<std::uint64_t> seeds;
  double breakdown_r_agg = 50.0;
  /// Upper bound of the position init interval per population size.
  std::map<std::size_t, double> init_upper_by_n;

  void validate() const;
};

struct SweepRow {
  double eta = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<double> delta;
  std::optional<double> h_final;
  double r_agg_final = 0.0;
  double r_agg_max = 0.0;
  double d_min_overall = 0.0;
  bool aggregation_lost = false;
  std::optional<std::string> error;
};

SweepSpec parse_sweep_spec(std::string_view text);
/// Built-in name ("phase-fig5", "spatial-fig7") or path to a JSON file.
SweepSpec resolve_sweep_spec(std::string_view name_or_path);
std::vector<std::string> builtin_sweep_names();

/// Config for a single cell.
engine::SimConfig sweep_cell_config(const SweepSpec& spec, double eta, std::size_t n,
                                    std::optional<double> delta, std::uint64_t seed);

/// One row per (eta, n, delta, seed) in that nesting order. Failed cells
/// carry an error message and the sweep continues. Cells run on `workers`
/// threads; rows are independent of the worker count.
std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned workers = 1);

/// eta,n,seed,h_final,r_agg_final,d_min_overall,aggregation_lost[,delta]
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);
/// eta,n,seed[,delta],message for failed cells.
std::string sweep_errors_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

// ---- export -------------------------------------------------------------

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// t,agent_id,px,py[,pz],vx,vy[,vz][,delta,eta][,energy]
std::string trajectory_csv(const engine::Trajectory& traj);
/// t,h,r_agg,d_avg,d_min,edge_pos_err_{x,y[,z]},edge_vel_err_{x,y[,z]},
/// edge_pos_err_norm,edge_vel_err_norm,lyapunov_v,lyapunov_v_dot
std::string metrics_csv(const engine::Trajectory& traj);
/// step,agent,kind,count,detail
std::string events_csv(const engine::Trajectory& traj);

/// Writes `contents` to `path`, throwing an Io error that names the path.
void write_text(const std::filesystem::path& path, std::string_view contents);

/// trajectory.csv, metrics.csv, events.csv and config.json under `dir`.
void export_run(const engine::Trajectory& traj, const engine::SimConfig& config,
                const std::filesystem::path& dir);

}  // namespace swarmkit::lab
