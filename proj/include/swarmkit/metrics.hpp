#pragma once

// Order parameters and cohesion statistics computed on a state snapshot.

#include <cstddef>
#include <optional>
#include <span>

#include "swarmkit/core.hpp"
#include "swarmkit/graph.hpp"

namespace swarmkit::metrics {

struct MetricSample {
  double time = 0.0;
  std::optional<double> h;  // empty when fewer than one valid pair
  double r_agg = 0.0;
  double d_avg = 0.0;
  double d_min = 0.0;
  Vec mean_edge_pos_err;    // per-axis mean of |agent average residual|
  Vec mean_edge_vel_err;
  double edge_pos_err_norm = 0.0;  // mean over agents of |agent average residual|
  double edge_vel_err_norm = 0.0;
  std::optional<double> lyapunov_v;
  std::optional<double> lyapunov_v_dot;
};

/// Mean cosine over unordered pairs of distinct agents. Agents slower than
/// core::kVelocityGuard are left out.
std::optional<double> alignment_score(std::span<const Vec> velocities);
std::optional<double> alignment_score(std::span<const core::AgentState> states);

/// Largest distance from the centroid.
double aggregation_radius(std::span<const core::AgentState> states);

struct PairDistances {
  double d_avg = 0.0;
  double d_min = 0.0;
};

/// Mean and minimum over unordered pairs; requires n >= 2.
PairDistances pair_distances(std::span<const core::AgentState> states);

struct EdgeErrorSummary {
  Vec mean_pos;
  Vec mean_vel;
  double pos_norm = 0.0;
  double vel_norm = 0.0;
};

EdgeErrorSummary summarize_edge_errors(const graph::EdgeErrors& errors, std::size_t dim);

/// Everything above except the Lyapunov fields.
MetricSample sample(double time, std::span<const core::AgentState> states,
                    std::span<const core::InteractionParams> params);

}  // namespace swarmkit::metrics
