#include "swarmkit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "swarmkit/error.hpp"
#include "swarmkit/graph.hpp"
#include "swarmkit/rng.hpp"

namespace swarmkit::engine {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw_error(ErrorKind::Config, "invalid config: " + what);
}

void validate_ranges(const std::vector<Range>& ranges, std::size_t dim,
                     const char* name) {
  require(ranges.size() == dim,
          std::string(name) + " needs one interval per axis");
  for (const Range& r : ranges) {
    require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi,
            std::string(name) + " intervals must be finite and ordered");
  }
}

// Runs fn(i) for i in [0, n) over `threads` contiguous chunks. Each index
// writes only its own output slot, so the result is independent of the
// chunking. The exception for the lowest failing index wins.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<core::Neighborhood> neighborhoods(const World& world) {
  std::vector<core::Neighborhood> out;
  out.reserve(world.agents.size());
  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    out.push_back(core::neighborhood(i, world.agents, world.params[i].radius));
  }
  return out;
}

void adapt(World& world, const SimConfig& config,
           const std::vector<core::InteractionParams>& base) {
  if (!config.adaptive) return;
  world.params = cognition::apply_adaptation(world.agents, world.energy, base,
                                             *config.adaptation, true);
}

[[noreturn]] void numeric_failure(std::size_t step, std::size_t agent,
                                  const std::string& what) {
  Error err(ErrorKind::Numeric, "non-finite " + what + " at step " +
                                    std::to_string(step) + ", agent " +
                                    std::to_string(agent));
  err.step = step;
  err.agent = agent;
  throw err;
}

}  // namespace

const char* to_string(Model model) noexcept {
  switch (model) {
    case Model::Minimal: return "minimal";
    case Model::CuckerSmale: return "cucker_smale";
  }
  return "minimal";
}

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::CoincidentPair: return "coincident_pair";
    case EventKind::ZeroRelativeVelocity: return "zero_relative_velocity";
    case EventKind::ObstacleDistanceClamped: return "obstacle_distance_clamped";
    case EventKind::NegativeEnergy: return "negative_energy";
    case EventKind::LyapunovInapplicable: return "lyapunov_inapplicable";
    case EventKind::LyapunovNotPsd: return "lyapunov_not_psd";
  }
  return "unknown";
}

void SimConfig::validate() const {
  require(n >= 2, "n must be >= 2");
  require(dim == 2 || dim == 3, "dim must be 2 or 3");
  require(std::isfinite(dt) && dt > 0.0, "dt must be > 0");
  require(std::isfinite(duration) && duration >= dt, "duration must be >= dt");
  validate_ranges(init_pos_range, dim, "init_pos_range");
  validate_ranges(init_vel_range, dim, "init_vel_range");
  interaction.validate();
  for (const AgentOverride& o : overrides) {
    require(o.agent < n, "override for agent " + std::to_string(o.agent) +
                             " out of range");
  }
  for (const core::InteractionParams& p : agent_params()) p.validate();
  if (target) target->validate(dim);
  for (const auto& o : obstacles) o.validate(dim);
  if (energy) {
    for (const auto& e : agent_energy()) e.validate();
  }
  if (adaptive) {
    require(energy.has_value(), "adaptive mode needs an energy block");
    require(adaptation.has_value(), "adaptive mode needs an adaptation block");
  }
  if (adaptation) adaptation->validate();
  if (model == Model::CuckerSmale) {
    require(cucker_smale.has_value(), "cucker_smale model needs its parameter block");
    require(!adaptive, "adaptation applies to the minimal model only");
  }
  if (cucker_smale) cucker_smale->validate();
  for (const AgentOverride& o : overrides) {
    if (o.kappa) require(std::isfinite(*o.kappa) && *o.kappa >= 0.0, "kappa must be >= 0");
  }
}

std::size_t SimConfig::step_count() const {
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
}

std::vector<core::InteractionParams> SimConfig::agent_params() const {
  std::vector<core::InteractionParams> out(n, interaction);
  for (const AgentOverride& o : overrides) {
    if (o.agent >= n) continue;
    core::InteractionParams& p = out[o.agent];
    if (o.delta) p.delta = *o.delta;
    if (o.eta) p.eta = *o.eta;
    if (o.alpha) p.alpha = *o.alpha;
    if (o.beta) p.beta = *o.beta;
    if (o.radius) p.radius = *o.radius;
    if (o.v_max) p.v_max = *o.v_max;
    if (o.t_vmax) p.t_vmax = *o.t_vmax;
  }
  return out;
}

std::vector<cognition::EnergyState> SimConfig::agent_energy() const {
  if (!energy) return {};
  cognition::EnergyState base{energy->initial, energy->initial, energy->c1, energy->c2};
  std::vector<cognition::EnergyState> out(n, base);
  for (const AgentOverride& o : overrides) {
    if (o.agent >= n) continue;
    auto& e = out[o.agent];
    if (o.initial_energy) e.energy = e.initial = *o.initial_energy;
    if (o.c1) e.c1 = *o.c1;
    if (o.c2) e.c2 = *o.c2;
  }
  return out;
}

std::vector<environment::TargetSpec> SimConfig::agent_targets() const {
  if (!cluttered || !target) return {};
  std::vector<environment::TargetSpec> out(n, *target);
  for (const AgentOverride& o : overrides) {
    if (o.agent < n && o.kappa) out[o.agent].kappa = *o.kappa;
  }
  return out;
}

World initialize(const SimConfig& config) {
  config.validate();
  World world;
  world.agents.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    AgentStream rng(config.seed, i);
    core::AgentState s{zero_vec(config.dim), zero_vec(config.dim)};
    for (std::size_t k = 0; k < config.dim; ++k) {
      s.position[static_cast<Eigen::Index>(k)] =
          rng.uniform(config.init_pos_range[k].lo, config.init_pos_range[k].hi);
    }
    for (std::size_t k = 0; k < config.dim; ++k) {
      s.velocity[static_cast<Eigen::Index>(k)] =
          rng.uniform(config.init_vel_range[k].lo, config.init_vel_range[k].hi);
    }
    world.agents.push_back(std::move(s));
  }
  world.params = config.agent_params();
  if (config.tracks_energy()) {
    for (const auto& e : config.agent_energy()) world.energy.push_back(e.initial);
    world.energy_went_negative.assign(config.n, false);
  }
  adapt(world, config, config.agent_params());
  return world;
}

World step(const World& world, const SimConfig& config, const RunOptions& options,
           std::vector<Event>* events) {
  const std::size_t n = world.agents.size();
  const std::size_t step_index = world.step + 1;
  const std::vector<core::Neighborhood> nbrs = neighborhoods(world);
  const std::vector<environment::TargetSpec> targets = config.agent_targets();
  const std::span<const environment::ObstacleSpec> obstacles =
      config.cluttered ? std::span<const environment::ObstacleSpec>(config.obstacles)
                       : std::span<const environment::ObstacleSpec>();

  std::vector<Vec> acc(n);
  std::vector<core::GuardReport> guards(n);
  std::vector<environment::ObstacleGuardReport> obstacle_guards(n);

  parallel_for(n, options.threads, [&](std::size_t i) {
    Vec a;
    if (config.model == Model::CuckerSmale) {
      a = core::cucker_smale_acceleration(i, world.agents, *config.cucker_smale);
      if (!targets.empty() && targets[i].kappa != 0.0) {
        a += environment::target_acceleration(world.agents[i], targets[i]);
      }
      if (!obstacles.empty()) {
        a += environment::obstacle_acceleration(world.agents[i], obstacles,
                                                &obstacle_guards[i]);
      }
    } else if (config.cluttered) {
      std::optional<environment::TargetSpec> target;
      if (!targets.empty()) target = targets[i];
      a = environment::extended_acceleration(i, world.agents, world.params[i], nbrs[i],
                                             target, obstacles, &guards[i],
                                             &obstacle_guards[i]);
    } else {
      a = core::interaction_acceleration(i, world.agents, world.params[i], nbrs[i],
                                         &guards[i]);
    }
    const double limit = world.params[i].rate_limit();
    const double mag = a.norm();
    if (mag > limit) a *= limit / mag;
    acc[i] = std::move(a);
  });

  World next;
  next.step = step_index;
  next.time = static_cast<double>(step_index) * config.dt;
  next.agents.resize(n);
  next.params = world.params;
  next.energy = world.energy;
  next.energy_went_negative = world.energy_went_negative;

  const std::vector<cognition::EnergyState> drains = config.agent_energy();
  for (std::size_t i = 0; i < n; ++i) {
    const core::AgentState& cur = world.agents[i];
    core::AgentState& out = next.agents[i];
    out.velocity = cur.velocity + acc[i] * config.dt;
    out.position = cur.position + out.velocity * config.dt;
    const double v_max = world.params[i].v_max;
    if (out.velocity.norm() > v_max) {
      out.velocity = core::saturate_velocity(out.velocity, v_max);
    }
    if (!out.position.allFinite() || !out.velocity.allFinite()) {
      numeric_failure(step_index, i, "state");
    }
    if (!next.energy.empty()) {
      next.energy[i] += config.dt * cognition::energy_derivative(acc[i], drains[i].c1,
                                                                 drains[i].c2);
      if (!std::isfinite(next.energy[i])) numeric_failure(step_index, i, "energy");
      if (next.energy[i] < 0.0 && !next.energy_went_negative[i]) {
        next.energy_went_negative[i] = true;
        if (events) {
          events->push_back({step_index, i, EventKind::NegativeEnergy, 1,
                             "energy dropped below zero"});
        }
      }
    }
    if (events) {
      if (guards[i].coincident_pairs > 0) {
        events->push_back({step_index, i, EventKind::CoincidentPair,
                           guards[i].coincident_pairs, ""});
      }
      if (guards[i].zero_relative_velocity_pairs > 0) {
        events->push_back({step_index, i, EventKind::ZeroRelativeVelocity,
                           guards[i].zero_relative_velocity_pairs, ""});
      }
      if (obstacle_guards[i].clamped_distances > 0) {
        events->push_back({step_index, i, EventKind::ObstacleDistanceClamped,
                           obstacle_guards[i].clamped_distances, ""});
      }
    }
  }

  adapt(next, config, config.agent_params());
  return next;
}

metrics::MetricSample measure(const World& world, const SimConfig& config,
                              std::vector<Event>* events) {
  metrics::MetricSample s = metrics::sample(world.time, world.agents, world.params);
  if (!config.monitor_lyapunov) return s;
  try {
    const graph::InteractionGraph g = graph::build_graph(world.agents, world.params);
    const graph::WeightedIncidence wi =
        graph::weighted_incidence(g, world.agents, world.params);
    const graph::EdgeState es = graph::edge_state(g, wi, world.agents);
    const graph::LyapunovValue lv = graph::lyapunov_value(es, wi, g);
    s.lyapunov_v = lv.v;
    s.lyapunov_v_dot = lv.v_dot;
    if (events && g.nodes <= graph::kDenseNodeLimit && !g.edges.empty()) {
      const auto ops = graph::lyapunov_operators(g, wi, config.dim);
      const double min_eig = graph::symmetric_part_min_eigenvalue(ops.a);
      if (min_eig < -1e-9) {
        events->push_back({world.step, std::nullopt, EventKind::LyapunovNotPsd, 1,
                           "min eigenvalue of sym(A) = " + std::to_string(min_eig)});
      }
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::OracleInapplicable) throw;
    if (events) {
      events->push_back({world.step, std::nullopt, EventKind::LyapunovInapplicable, 1,
                         err.what()});
    }
  }
  return s;
}

Trajectory run(const SimConfig& config, const RunOptions& options) {
  Trajectory traj;
  traj.n = config.n;
  traj.dim = config.dim;
  traj.adaptive = config.adaptive;
  traj.energy_tracked = config.tracks_energy();

  const std::size_t steps = config.step_count();
  traj.snapshots.reserve(steps + 1);
  traj.metrics.reserve(steps + 1);

  auto record = [&](const World& w) {
    Snapshot snap;
    snap.time = w.time;
    snap.agents = w.agents;
    if (config.adaptive) {
      for (const auto& p : w.params) {
        snap.delta.push_back(p.delta);
        snap.eta.push_back(p.eta);
      }
    }
    snap.energy = w.energy;
    traj.snapshots.push_back(std::move(snap));
    traj.metrics.push_back(measure(w, config, &traj.events));
  };

  World world = initialize(config);
  record(world);
  for (std::size_t k = 0; k < steps; ++k) {
    world = step(world, config, options, &traj.events);
    record(world);
  }
  return traj;
}

}  // namespace swarmkit::engine
