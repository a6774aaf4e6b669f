#include "swarmkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swarmkit/error.hpp"

namespace swarmkit::core {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw_error(ErrorKind::Config, std::string("invalid parameter: ") + what);
}

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) {
    throw_error(ErrorKind::IndexOutOfRange,
                "agent index " + std::to_string(i) + " out of range for " +
                    std::to_string(n) + " agents");
  }
}

}  // namespace

void InteractionParams::validate() const {
  require(std::isfinite(delta) && delta >= 0.0, "delta must be >= 0");
  require(std::isfinite(eta) && eta >= 0.0, "eta must be >= 0");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  require(std::isfinite(radius) && radius > 0.0, "radius must be > 0");
  require(std::isfinite(v_max) && v_max > 0.0, "v_max must be > 0");
  require(std::isfinite(t_vmax) && t_vmax > 0.0, "t_vmax must be > 0");
}

void CuckerSmaleParams::validate() const {
  require(std::isfinite(k_gain) && k_gain > 0.0, "k_gain must be > 0");
  require(std::isfinite(sigma_cs) && sigma_cs > 0.0, "sigma_cs must be > 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
}

Neighborhood neighborhood(std::size_t i, std::span<const AgentState> states,
                          double radius) {
  check_index(i, states.size());
  Neighborhood out;
  const Vec& pi = states[i].position;
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (j == i) continue;
    if ((states[j].position - pi).norm() <= radius) out.members.push_back(j);
  }
  return out;
}

double psi_weight(double distance, double delta, std::size_t count, double alpha) {
  if (!(distance > 0.0)) {
    throw_error(ErrorKind::Domain, "psi_weight requires distance > 0");
  }
  const double ratio = delta * static_cast<double>(count) / distance;
  return 1.0 - std::pow(ratio, alpha);
}

double phi_weight(double speed_diff, double eta, std::size_t count, double beta) {
  if (!(speed_diff > 0.0)) {
    throw_error(ErrorKind::Domain, "phi_weight requires speed_diff > 0");
  }
  const double ratio = eta / (static_cast<double>(count) * speed_diff);
  return 1.0 - std::pow(ratio, beta);
}

Vec interaction_acceleration(std::size_t i, std::span<const AgentState> states,
                             const InteractionParams& params,
                             const Neighborhood& nbrs, GuardReport* guards) {
  check_index(i, states.size());
  const AgentState& self = states[i];
  Vec acc = zero_vec(self.dim());
  const std::size_t count = nbrs.count();
  if (count == 0) return acc;

  for (std::size_t j : nbrs.members) {
    const Vec dp = states[j].position - self.position;
    const double dist = dp.norm();
    if (dist < kPositionGuard) {
      const double psi_eps = psi_weight(kPositionGuard, params.delta, count, params.alpha);
      if (psi_eps < 0.0) {
        Vec push = zero_vec(self.dim());
        push[0] = (i < j) ? psi_eps : -psi_eps;
        acc += push;
      }
      if (guards) ++guards->coincident_pairs;
    } else {
      acc += psi_weight(dist, params.delta, count, params.alpha) * dp;
    }

    const Vec dv = states[j].velocity - self.velocity;
    const double speed = dv.norm();
    if (speed < kVelocityGuard) {
      if (guards) ++guards->zero_relative_velocity_pairs;
    } else {
      acc += phi_weight(speed, params.eta, count, params.beta) * dv;
    }

    if (!acc.allFinite()) {
      throw_pair_error(ErrorKind::Numeric, "non-finite interaction term", i, j);
    }
  }
  return acc;
}

Vec interaction_acceleration(std::size_t i, std::span<const AgentState> states,
                             const InteractionParams& params) {
  return interaction_acceleration(i, states, params,
                                  neighborhood(i, states, params.radius));
}

OffsetVectors offset_vectors(std::size_t i, std::size_t j,
                             std::span<const AgentState> states,
                             const InteractionParams& params,
                             std::size_t neighbor_count) {
  check_index(i, states.size());
  check_index(j, states.size());
  const Vec dp = states[j].position - states[i].position;
  const Vec dv = states[j].velocity - states[i].velocity;
  const double dist = dp.norm();
  const double speed = dv.norm();
  if (dist <= kPositionGuard || speed <= kVelocityGuard || neighbor_count == 0) {
    throw_pair_error(ErrorKind::DegeneratePair, "offset vectors undefined", i, j);
  }
  const double count = static_cast<double>(neighbor_count);
  const double wp = std::pow(params.delta * count / dist, params.alpha);
  const double wv = std::pow(params.eta / (count * speed), params.beta);
  return {wp * dp, wv * dv};
}

OffsetVectors offset_vectors(std::size_t i, std::size_t j,
                             std::span<const AgentState> states,
                             const InteractionParams& params) {
  const Neighborhood nbrs = neighborhood(i, states, params.radius);
  return offset_vectors(i, j, states, params, nbrs.count());
}

Vec saturate_velocity(const Vec& v, double v_max) {
  const double speed = v.norm();
  if (speed < kVelocityGuard) return v;
  // tanh rounds to 1 for large arguments; keep the bound strict.
  const double magnitude =
      std::min(v_max * std::tanh(speed / v_max), v_max * (1.0 - 1e-14));
  return (magnitude / speed) * v;
}

Vec cucker_smale_acceleration(std::size_t i, std::span<const AgentState> states,
                              const CuckerSmaleParams& cs) {
  check_index(i, states.size());
  const AgentState& self = states[i];
  Vec acc = zero_vec(self.dim());
  const double sigma_sq = cs.sigma_cs * cs.sigma_cs;
  for (const AgentState& other : states) {
    const double dist = (other.position - self.position).norm();
    const double w = cs.k_gain / std::pow(sigma_sq + dist, cs.gamma);
    acc += w * (other.velocity - self.velocity);
  }
  return acc;
}

}  // namespace swarmkit::core
