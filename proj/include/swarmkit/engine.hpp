#pragma once

// Time stepping: seeded initialization, force assembly, rate and speed
// saturation, semi-implicit Euler integration and trajectory recording.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swarmkit/cognition.hpp"
#include "swarmkit/core.hpp"
#include "swarmkit/environment.hpp"
#include "swarmkit/metrics.hpp"

namespace swarmkit::engine {

enum class Model { Minimal, CuckerSmale };

const char* to_string(Model model) noexcept;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Range&, const Range&) = default;
};

/// Per-agent deviations from the shared parameter blocks.
struct AgentOverride {
  std::size_t agent = 0;
  std::optional<double> delta, eta, alpha, beta, radius, v_max, t_vmax;
  std::optional<double> kappa;
  std::optional<double> initial_energy, c1, c2;
};

struct EnergyConfig {
  double initial = 80.0;
  double c1 = 0.15;
  double c2 = 0.015;
};

struct SimConfig {
  std::size_t n = 15;
  std::size_t dim = 2;
  double dt = 0.1;
  double duration = 30.0;
  std::uint64_t seed = 1;
  std::vector<Range> init_pos_range;  // one per axis
  std::vector<Range> init_vel_range;

  Model model = Model::Minimal;
  bool cluttered = false;
  bool adaptive = false;
  bool monitor_lyapunov = false;

  core::InteractionParams interaction;
  std::vector<AgentOverride> overrides;

  std::optional<environment::TargetSpec> target;
  std::vector<environment::ObstacleSpec> obstacles;

  std::optional<EnergyConfig> energy;
  std::optional<cognition::AdaptationParams> adaptation;
  std::optional<core::CuckerSmaleParams> cucker_smale;

  /// Throws a Config error describing the first problem found.
  void validate() const;

  /// Number of integration steps, floor(duration / dt).
  std::size_t step_count() const;

  std::vector<core::InteractionParams> agent_params() const;
  std::vector<cognition::EnergyState> agent_energy() const;
  /// Per-agent targets (kappa may be overridden); empty without a target or
  /// outside cluttered mode.
  std::vector<environment::TargetSpec> agent_targets() const;

  bool tracks_energy() const { return energy.has_value(); }
};

struct RunOptions {
  /// Worker threads for per-agent force evaluation. Results do not depend
  /// on this value.
  unsigned threads = 1;
};

enum class EventKind {
  CoincidentPair,
  ZeroRelativeVelocity,
  ObstacleDistanceClamped,
  NegativeEnergy,
  LyapunovInapplicable,
  LyapunovNotPsd,
};

const char* to_string(EventKind kind) noexcept;

struct Event {
  std::size_t step = 0;
  std::optional<std::size_t> agent;
  EventKind kind = EventKind::CoincidentPair;
  std::size_t count = 1;
  std::string detail;
};

struct World {
  std::size_t step = 0;
  double time = 0.0;
  std::vector<core::AgentState> agents;
  /// Parameters in effect for the current state (adapted when enabled).
  std::vector<core::InteractionParams> params;
  std::vector<double> energy;            // empty unless energy is tracked
  std::vector<bool> energy_went_negative;
};

World initialize(const SimConfig& config);

/// Advances one step. Order: forces from the current snapshot, clamp
/// |a| <= s_i, v' = v + a dt, p' = p + v' dt, tanh saturation of v' when
/// |v'| > v_max, energy update with the clamped acceleration, then
/// adaptation of delta/eta against the new snapshot.
/// Throws a Numeric error (with step and agent) on non-finite state.
World step(const World& world, const SimConfig& config, const RunOptions& options = {},
           std::vector<Event>* events = nullptr);

struct Snapshot {
  double time = 0.0;
  std::vector<core::AgentState> agents;
  std::vector<double> delta;   // filled in adaptive runs
  std::vector<double> eta;     // filled in adaptive runs
  std::vector<double> energy;  // filled when energy is tracked
};

struct Trajectory {
  std::size_t n = 0;
  std::size_t dim = 0;
  bool adaptive = false;
  bool energy_tracked = false;
  std::vector<Snapshot> snapshots;
  std::vector<metrics::MetricSample> metrics;
  std::vector<Event> events;
};

Trajectory run(const SimConfig& config, const RunOptions& options = {});

/// Metrics for a world, including the Lyapunov monitor when enabled.
metrics::MetricSample measure(const World& world, const SimConfig& config,
                              std::vector<Event>* events = nullptr);

}  // namespace swarmkit::engine
