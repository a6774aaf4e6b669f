#pragma once

// Target attraction and obstacle repulsion for navigation in cluttered space.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swarmkit/core.hpp"

namespace swarmkit::environment {

struct TargetSpec {
  Vec position;
  double kappa = 0.5;  // attraction gain (1/s^2); 0 disables the term

  void validate(std::size_t dim) const;
};

struct ObstacleSpec {
  Vec center;
  double radius = 0.0;     // physical radius, used only for collision checks
  double detection = 15.0; // detection/interaction radius c (m)
  double sigma_o = 3.0;    // repulsion steepness

  void validate(std::size_t dim) const;
};

/// min(0, 1 - (detection / distance)^sigma_o). Nonpositive everywhere.
double rho_weight(double distance, double detection, double sigma_o);

/// Indices into `obstacles` whose centers lie within their detection radius
/// of the agent (boundary included).
std::vector<std::size_t> detected_obstacles(const core::AgentState& state,
                                            std::span<const ObstacleSpec> obstacles);

/// Number of times the minimum obstacle-distance guard was applied.
struct ObstacleGuardReport {
  std::size_t clamped_distances = 0;
};

/// Repulsion from detected obstacles, summed. Obstacle centers closer than
/// core::kPositionGuard are evaluated at that distance.
Vec obstacle_acceleration(const core::AgentState& state,
                          std::span<const ObstacleSpec> obstacles,
                          ObstacleGuardReport* guards = nullptr);

/// kappa * (p_t - p_i).
Vec target_acceleration(const core::AgentState& state, const TargetSpec& target);

/// Interaction law plus target and obstacle terms. A missing target or a zero
/// kappa contributes nothing, so with no obstacles the result is bit-identical
/// to core::interaction_acceleration.
Vec extended_acceleration(std::size_t i, std::span<const core::AgentState> states,
                          const core::InteractionParams& params,
                          const core::Neighborhood& nbrs,
                          const std::optional<TargetSpec>& target,
                          std::span<const ObstacleSpec> obstacles,
                          core::GuardReport* guards = nullptr,
                          ObstacleGuardReport* obstacle_guards = nullptr);

Vec extended_acceleration(std::size_t i, std::span<const core::AgentState> states,
                          const core::InteractionParams& params,
                          const std::optional<TargetSpec>& target,
                          std::span<const ObstacleSpec> obstacles);

}  // namespace swarmkit::environment
