// Acceptance suite. Prints one PASS/FAIL line per criterion, with the
// measured quantities and wall time, and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "swarmkit/core.hpp"
#include "swarmkit/engine.hpp"
#include "swarmkit/error.hpp"
#include "swarmkit/graph.hpp"
#include "swarmkit/lab.hpp"
#include "swarmkit/metrics.hpp"

using namespace swarmkit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

engine::SimConfig with_seed(engine::SimConfig c, std::uint64_t seed) {
  c.seed = seed;
  return c;
}

double d_min_after(const engine::Trajectory& t, double after) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& m : t.metrics) {
    if (m.time > after + 1e-9) out = std::min(out, m.d_min);
  }
  return out;
}

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size() / 2;
  return xs.size() % 2 ? xs[k] : 0.5 * (xs[k - 1] + xs[k]);
}

std::vector<core::AgentState> random_states(std::mt19937_64& rng, std::size_t n,
                                            std::size_t dim) {
  std::uniform_real_distribution<double> pos(0.0, 10.0), vel(-1.0, 1.0);
  std::vector<core::AgentState> s(n, {Vec(static_cast<Eigen::Index>(dim)),
                                      Vec(static_cast<Eigen::Index>(dim))});
  for (auto& a : s) {
    for (Eigen::Index k = 0; k < a.position.size(); ++k) a.position[k] = pos(rng);
    for (Eigen::Index k = 0; k < a.velocity.size(); ++k) a.velocity[k] = vel(rng);
  }
  return s;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> n_dist(2, 10), dim_dist(2, 3), exp_dist(1, 2);
  std::uniform_real_distribution<double> offset(0.0, 5.0);
  double worst = 0.0;
  int configs = 0;
  while (configs < 1000) {
    const std::size_t n = n_dist(rng), dim = dim_dist(rng);
    const auto states = random_states(rng, n, dim);
    std::vector<core::InteractionParams> params(n);
    for (auto& p : params) {
      p.delta = offset(rng);
      p.eta = offset(rng);
      p.alpha = static_cast<double>(exp_dist(rng));
      p.beta = static_cast<double>(exp_dist(rng));
    }
    bool guard_free = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        guard_free &= (states[i].position - states[j].position).norm() > 1e-6 &&
                      (states[i].velocity - states[j].velocity).norm() > 1e-6;
      }
    }
    if (!guard_free) continue;
    const Eigen::VectorXd global = graph::global_rhs(states, params);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec a = core::interaction_acceleration(i, states, params[i]);
      const auto base = static_cast<Eigen::Index>(i * dim);
      for (Eigen::Index k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - global[base + k]));
      }
    }
    ++configs;
  }
  return {worst <= 1e-9, fmt("%d configs, max |per-agent - global| = %.3g", configs, worst)};
}

Outcome weight_anchors() {
  double worst_psi = 0.0, worst_phi = 0.0;
  const double exps[] = {0.5, 1.0, 2.0, 3.0};
  for (int a = 1; a <= 10; ++a) {
    for (std::size_t count = 1; count <= 10; ++count) {
      for (double e : exps) {
        const double offset = 0.37 * a;
        const double c = static_cast<double>(count);
        worst_psi = std::max(worst_psi, std::abs(core::psi_weight(offset * c, offset, count, e)));
        worst_phi = std::max(worst_phi, std::abs(core::phi_weight(offset / c, offset, count, e)));
      }
    }
  }
  const double tol = 8 * std::numeric_limits<double>::epsilon();
  return {worst_psi <= tol && worst_phi <= tol,
          fmt("400 lattice points, max |psi| = %.3g, max |phi| = %.3g (tol %.3g)", worst_psi,
              worst_phi, tol)};
}

Outcome flocking_order() {
  const auto base = lab::preset("flocking-fig2a").config;
  std::vector<double> h;
  double dmin = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto t = engine::run(with_seed(base, seed));
    h.push_back(t.metrics.back().h.value_or(0.0));
    dmin = std::min(dmin, d_min_after(t, 5.0));
  }
  const double med = median(h);
  return {med >= 0.9 && dmin > 0.1,
          fmt("median h(30 s) = %.4f (>= 0.9), min d_min after 5 s = %.4f m (> 0.1)", med, dmin)};
}

Outcome phase_ordering() {
  const lab::SweepSpec spec = lab::resolve_sweep_spec("phase-fig5");
  auto cell = [&](double eta, std::uint64_t seed) {
    return engine::run(lab::sweep_cell_config(spec, eta, 50, std::nullopt, seed));
  };
  std::vector<double> h_mean, r_mean;
  for (int e = 0; e <= 13; ++e) {
    std::vector<double> h, r;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto t = cell(e, seed);
      h.push_back(t.metrics.back().h.value_or(0.0));
      r.push_back(t.metrics.back().r_agg);
    }
    h_mean.push_back(mean(h));
    r_mean.push_back(mean(r));
  }
  const double gap = h_mean[3] - h_mean[13];
  double worst_ratio = 0.0;
  for (int e = 0; e <= 10; ++e) worst_ratio = std::max(worst_ratio, r_mean[e] / r_mean[3]);
  return {gap >= 0.3 && worst_ratio < 3.0,
          fmt("h(3) = %.3f, h(13) = %.3f, gap = %.3f (>= 0.3); max r_agg(eta<=10)/r_agg(3) = "
              "%.3f (< 3)",
              h_mean[3], h_mean[13], gap, worst_ratio)};
}

Outcome collision_floor() {
  const lab::SweepSpec spec = lab::resolve_sweep_spec("spatial-fig7");
  double dmin = std::numeric_limits<double>::infinity();
  std::string worst;
  for (double eta : {3.0, 21.0}) {
    for (double delta : {0.5, 1.0}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto t = engine::run(lab::sweep_cell_config(spec, eta, 100, delta, seed),
                                   {.threads = 4});
        const double d = d_min_after(t, 5.0);
        if (d < dmin) {
          dmin = d;
          worst = fmt("eta=%g delta=%g seed=%llu", eta, delta,
                      static_cast<unsigned long long>(seed));
        }
      }
    }
  }
  return {dmin > 0.05,
          fmt("12 runs, min d_min after 5 s = %.4f m (> 0.05) at %s", dmin, worst.c_str())};
}

Outcome cluttered_navigation() {
  const auto base = lab::preset("cluttered-fig6").config;
  double worst_goal = 0.0;
  double closest = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto cfg = with_seed(base, seed);
    const auto t = engine::run(cfg);
    for (const auto& snap : t.snapshots) {
      for (const auto& a : snap.agents) {
        for (const auto& o : cfg.obstacles) {
          closest = std::min(closest, (a.position - o.center).norm());
        }
      }
    }
    Vec centroid = Vec::Zero(static_cast<Eigen::Index>(cfg.dim));
    for (const auto& a : t.snapshots.back().agents) centroid += a.position;
    centroid /= static_cast<double>(cfg.n);
    worst_goal = std::max(worst_goal, (centroid - cfg.target->position).norm());
  }
  return {worst_goal < 10.0 && closest > 5.0,
          fmt("max centroid-goal distance at 40 s = %.3f m (< 10), closest obstacle approach = "
              "%.3f m (> 5)",
              worst_goal, closest)};
}

double mean_abs_energy_rate(const engine::Trajectory& t, double dt, double from, double to) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k + 1 < t.snapshots.size(); ++k) {
    const auto& a = t.snapshots[k];
    if (a.time < from - 1e-9 || t.snapshots[k + 1].time > to + 1e-9) continue;
    for (std::size_t i = 0; i < a.energy.size(); ++i) {
      sum += std::abs(t.snapshots[k + 1].energy[i] - a.energy[i]) / dt;
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

Outcome energy_adaptation() {
  const auto adaptive = lab::preset("adaptive-fig9").config;
  const auto fixed = lab::preset("adaptive-fig9-fixed-swarming").config;
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto ta = engine::run(with_seed(adaptive, seed));
    const auto tf = engine::run(with_seed(fixed, seed));
    const double eta0 = mean(ta.snapshots.front().eta);
    const double eta1 = mean(ta.snapshots.back().eta);
    const double ea = mean(ta.snapshots.back().energy);
    const double ef = mean(tf.snapshots.back().energy);
    const double early = mean_abs_energy_rate(ta, adaptive.dt, 0.0, 10.0);
    const double late = mean_abs_energy_rate(ta, adaptive.dt, 50.0, 60.0);
    pass &= eta1 < eta0 && ea >= ef && late < early;
    detail += fmt("%sseed %llu: eta %.2f->%.2f, E adaptive %.2f vs fixed %.2f, |dE/dt| "
                  "first 10 s %.3f last 10 s %.3f",
                  seed == 1 ? "" : "; ", static_cast<unsigned long long>(seed), eta0, eta1, ea,
                  ef, early, late);
  }
  return {pass, detail};
}

Outcome lyapunov_monitor() {
  // Reciprocal edge pairs with unequal weights make sym(A) indefinite, so
  // heterogeneous radii are drawn to get directed, sparse graphs.
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> n_dist(2, 6), dim_dist(2, 3);
  std::uniform_real_distribution<double> delta(0.0, 2.0), eta(0.0, 0.5), radius(1.0, 10.0);
  int accepted = 0, tried = 0;
  std::size_t edges = 0;
  double worst_vdot = -std::numeric_limits<double>::infinity();
  while (accepted < 200 && tried < 1000000) {
    ++tried;
    const std::size_t n = n_dist(rng), dim = dim_dist(rng);
    const auto states = random_states(rng, n, dim);
    std::vector<core::InteractionParams> params(n);
    for (auto& p : params) {
      p.delta = delta(rng);
      p.eta = eta(rng);
      p.radius = radius(rng);
    }
    const auto g = graph::build_graph(states, params);
    if (g.edges.size() < 2) continue;
    const auto wi = graph::weighted_incidence(g, states, params);
    const auto ops = graph::lyapunov_operators(g, wi, dim);
    if (graph::symmetric_part_min_eigenvalue(ops.a) < -1e-12) continue;
    const auto es = graph::edge_state(g, wi, states);
    worst_vdot = std::max(worst_vdot, graph::lyapunov_value(es, wi, g).v_dot);
    edges += g.edges.size();
    ++accepted;
  }
  const bool frozen_ok = accepted == 200 && worst_vdot <= 1e-12;

  const auto t = engine::run(lab::preset("vortexing-fig2b").config);
  auto at = [&](double time) {
    for (const auto& m : t.metrics) {
      if (std::abs(m.time - time) < 1e-9) return m.edge_pos_err_norm;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  const double e1 = at(1.0), e30 = at(30.0);
  const double ratio = e30 / e1;
  return {frozen_ok && ratio < 0.2,
          fmt("%d PSD configs of %d drawn (%zu edges), max V_dot = %.3g (<= 1e-12); vortex edge position "
              "error %.4f (1 s) -> %.4f (30 s), ratio %.3f (< 0.2)",
              accepted, tried, edges, worst_vdot, e1, e30, ratio)};
}

double max_velocity_spread(const std::vector<core::AgentState>& agents) {
  double out = 0.0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      out = std::max(out, (agents[i].velocity - agents[j].velocity).norm());
    }
  }
  return out;
}

Outcome cucker_smale_baseline() {
  const auto cs = lab::preset("cucker-smale-baseline").config;
  auto proposed = lab::preset("flocking-fig2a").config;
  proposed.n = cs.n;
  proposed.duration = cs.duration;
  proposed.dt = cs.dt;
  proposed.init_pos_range = cs.init_pos_range;
  proposed.init_vel_range = cs.init_vel_range;

  double worst_ratio = 0.0;
  int closer = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto tc = engine::run(with_seed(cs, seed));
    const auto tp = engine::run(with_seed(proposed, seed));
    worst_ratio = std::max(worst_ratio, max_velocity_spread(tc.snapshots.back().agents) /
                                            max_velocity_spread(tc.snapshots.front().agents));
    if (d_min_after(tc, 0.0) < d_min_after(tp, 0.0)) ++closer;
  }
  return {worst_ratio < 0.05 && closer >= 1,
          fmt("max velocity spread ratio over 20 seeds = %.4g (< 0.05); seeds with d_min(CS) < "
              "d_min(proposed) = %d of 20 (>= 1)",
              worst_ratio, closer)};
}

Outcome determinism() {
  int compared = 0;
  std::string mismatched;
  for (const auto& p : lab::presets()) {
    const std::string a = lab::trajectory_csv(engine::run(p.config, {.threads = 1}));
    const std::string b = lab::trajectory_csv(engine::run(p.config, {.threads = 1}));
    const std::string c = lab::trajectory_csv(engine::run(p.config, {.threads = 4}));
    if (a != b || a != c) mismatched += " " + p.name;
    ++compared;
  }
  return {mismatched.empty(),
          fmt("%d presets, runs at 1, 1 and 4 threads %s", compared,
              mismatched.empty() ? "byte-identical" : ("differ:" + mismatched).c_str())};
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 oracle equivalence", 10, oracle_equivalence},
      {"2 weight-function anchors", 1, weight_anchors},
      {"3 flocking order", 5, flocking_order},
      {"4 phase ordering", 120, phase_ordering},
      {"5 collision floor", 180, collision_floor},
      {"6 cluttered navigation", 30, cluttered_navigation},
      {"7 energy adaptation", 60, energy_adaptation},
      {"8 lyapunov monitor", 30, lyapunov_monitor},
      {"9 cucker-smale baseline", 30, cucker_smale_baseline},
      {"10 determinism", 10, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  %-26s %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.name,
                out.detail.c_str(), secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
