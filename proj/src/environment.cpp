#include "swarmkit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarmkit/error.hpp"

namespace swarmkit::environment {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw_error(ErrorKind::Config, std::string("invalid environment: ") + what);
}

}  // namespace

void TargetSpec::validate(std::size_t dim) const {
  require(dim_of(position) == dim, "target position dimension mismatch");
  require(position.allFinite(), "target position must be finite");
  require(std::isfinite(kappa) && kappa >= 0.0, "kappa must be >= 0");
}

void ObstacleSpec::validate(std::size_t dim) const {
  require(dim_of(center) == dim, "obstacle center dimension mismatch");
  require(center.allFinite(), "obstacle center must be finite");
  require(std::isfinite(radius) && radius >= 0.0, "obstacle radius must be >= 0");
  require(std::isfinite(detection) && detection > 0.0, "detection must be > 0");
  require(std::isfinite(sigma_o) && sigma_o > 0.0, "sigma_o must be > 0");
}

double rho_weight(double distance, double detection, double sigma_o) {
  if (!(distance > 0.0)) {
    throw_error(ErrorKind::Domain, "rho_weight requires distance > 0");
  }
  return std::min(0.0, 1.0 - std::pow(detection / distance, sigma_o));
}

std::vector<std::size_t> detected_obstacles(const core::AgentState& state,
                                            std::span<const ObstacleSpec> obstacles) {
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < obstacles.size(); ++o) {
    if ((obstacles[o].center - state.position).norm() <= obstacles[o].detection) {
      out.push_back(o);
    }
  }
  return out;
}

Vec obstacle_acceleration(const core::AgentState& state,
                          std::span<const ObstacleSpec> obstacles,
                          ObstacleGuardReport* guards) {
  Vec acc = zero_vec(state.dim());
  for (std::size_t o : detected_obstacles(state, obstacles)) {
    const ObstacleSpec& obs = obstacles[o];
    Vec toward = obs.center - state.position;
    double dist = toward.norm();
    if (dist < core::kPositionGuard) {
      // Rescale to the guard distance; an exact overlap picks the first axis.
      if (dist > 0.0) {
        toward *= core::kPositionGuard / dist;
      } else {
        toward = zero_vec(state.dim());
        toward[0] = core::kPositionGuard;
      }
      dist = core::kPositionGuard;
      if (guards) ++guards->clamped_distances;
    }
    acc += rho_weight(dist, obs.detection, obs.sigma_o) * toward;
  }
  return acc;
}

Vec target_acceleration(const core::AgentState& state, const TargetSpec& target) {
  return target.kappa * (target.position - state.position);
}

Vec extended_acceleration(std::size_t i, std::span<const core::AgentState> states,
                          const core::InteractionParams& params,
                          const core::Neighborhood& nbrs,
                          const std::optional<TargetSpec>& target,
                          std::span<const ObstacleSpec> obstacles,
                          core::GuardReport* guards,
                          ObstacleGuardReport* obstacle_guards) {
  Vec acc = core::interaction_acceleration(i, states, params, nbrs, guards);
  if (target && target->kappa != 0.0) acc += target_acceleration(states[i], *target);
  if (!obstacles.empty()) acc += obstacle_acceleration(states[i], obstacles, obstacle_guards);
  if (!acc.allFinite()) {
    Error err(ErrorKind::Numeric, "non-finite extended acceleration for agent " +
                                      std::to_string(i));
    err.agent = i;
    throw err;
  }
  return acc;
}

Vec extended_acceleration(std::size_t i, std::span<const core::AgentState> states,
                          const core::InteractionParams& params,
                          const std::optional<TargetSpec>& target,
                          std::span<const ObstacleSpec> obstacles) {
  return extended_acceleration(i, states, params,
                               core::neighborhood(i, states, params.radius), target,
                               obstacles);
}

}  // namespace swarmkit::environment
