#include "swarmkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "swarmkit/error.hpp"

namespace swarmkit::metrics {

std::optional<double> alignment_score(std::span<const Vec> velocities) {
  std::vector<Vec> units;
  units.reserve(velocities.size());
  for (const Vec& v : velocities) {
    const double speed = v.norm();
    if (speed >= core::kVelocityGuard) units.push_back(v / speed);
  }
  if (units.size() < 2) return std::nullopt;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      sum += units[i].dot(units[j]);
      ++pairs;
    }
  }
  return std::clamp(sum / static_cast<double>(pairs), -1.0, 1.0);
}

std::optional<double> alignment_score(std::span<const core::AgentState> states) {
  std::vector<Vec> v;
  v.reserve(states.size());
  for (const auto& s : states) v.push_back(s.velocity);
  return alignment_score(v);
}

double aggregation_radius(std::span<const core::AgentState> states) {
  if (states.empty()) throw_error(ErrorKind::Domain, "aggregation_radius needs n >= 1");
  Vec centroid = zero_vec(states.front().dim());
  for (const auto& s : states) centroid += s.position;
  centroid /= static_cast<double>(states.size());
  double r = 0.0;
  for (const auto& s : states) r = std::max(r, (s.position - centroid).norm());
  return r;
}

PairDistances pair_distances(std::span<const core::AgentState> states) {
  if (states.size() < 2) throw_error(ErrorKind::Domain, "pair_distances needs n >= 2");
  double sum = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const double d = (states[j].position - states[i].position).norm();
      sum += d;
      lowest = std::min(lowest, d);
      ++pairs;
    }
  }
  return {sum / static_cast<double>(pairs), lowest};
}

EdgeErrorSummary summarize_edge_errors(const graph::EdgeErrors& errors, std::size_t dim) {
  EdgeErrorSummary out{zero_vec(dim), zero_vec(dim)};
  std::size_t np = 0, nv = 0;
  for (std::size_t i = 0; i < errors.agent_position_mean.size(); ++i) {
    if (errors.agent_position_valid[i]) {
      out.mean_pos += errors.agent_position_mean[i].cwiseAbs();
      out.pos_norm += errors.agent_position_mean[i].norm();
      ++np;
    }
    if (errors.agent_velocity_valid[i]) {
      out.mean_vel += errors.agent_velocity_mean[i].cwiseAbs();
      out.vel_norm += errors.agent_velocity_mean[i].norm();
      ++nv;
    }
  }
  if (np > 0) {
    out.mean_pos /= static_cast<double>(np);
    out.pos_norm /= static_cast<double>(np);
  }
  if (nv > 0) {
    out.mean_vel /= static_cast<double>(nv);
    out.vel_norm /= static_cast<double>(nv);
  }
  return out;
}

MetricSample sample(double time, std::span<const core::AgentState> states,
                    std::span<const core::InteractionParams> params) {
  MetricSample s;
  s.time = time;
  s.h = alignment_score(states);
  s.r_agg = aggregation_radius(states);
  const PairDistances pd = pair_distances(states);
  s.d_avg = pd.d_avg;
  s.d_min = pd.d_min;
  const std::size_t dim = states.front().dim();
  const EdgeErrorSummary es = summarize_edge_errors(graph::edge_errors(states, params), dim);
  s.mean_edge_pos_err = es.mean_pos;
  s.mean_edge_vel_err = es.mean_vel;
  s.edge_pos_err_norm = es.pos_norm;
  s.edge_vel_err_norm = es.vel_norm;
  return s;
}

}  // namespace swarmkit::metrics
