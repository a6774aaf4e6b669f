#include "swarmkit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "swarmkit/error.hpp"

namespace swarmkit::graph {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Index idx(std::size_t v) { return static_cast<Index>(v); }

std::size_t dimension(std::span<const core::AgentState> states) {
  return states.empty() ? 0 : states.front().dim();
}

void check_sizes(std::span<const core::AgentState> states,
                 std::span<const core::InteractionParams> params) {
  if (states.size() != params.size()) {
    throw_error(ErrorKind::Config, "states and params differ in length");
  }
}

// Per-node sum over owned (in-)edges of weight * edge_vector.
VectorXd gather_heads(const InteractionGraph& g, const std::vector<double>& one_minus,
                      const VectorXd& edge_vectors, std::size_t dim) {
  VectorXd out = VectorXd::Zero(idx(g.nodes * dim));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out.segment(idx(g.edges[e].head * dim), idx(dim)) +=
        one_minus[e] * edge_vectors.segment(idx(e * dim), idx(dim));
  }
  return out;
}

// (D^T (x) I_m) x: per edge, x_head - x_tail.
VectorXd scatter_edges(const InteractionGraph& g, const VectorXd& node_vectors,
                       std::size_t dim) {
  VectorXd out(idx(g.edges.size() * dim));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out.segment(idx(e * dim), idx(dim)) =
        node_vectors.segment(idx(g.edges[e].head * dim), idx(dim)) -
        node_vectors.segment(idx(g.edges[e].tail * dim), idx(dim));
  }
  return out;
}

std::vector<double> one_minus(const std::vector<double>& w) {
  std::vector<double> out(w.size());
  std::transform(w.begin(), w.end(), out.begin(), [](double x) { return 1.0 - x; });
  return out;
}

MatrixXd weighted_rows(const InteractionGraph& g, const std::vector<double>& w,
                       std::size_t dim) {
  MatrixXd out = MatrixXd::Zero(idx(g.nodes * dim), idx(g.edges.size() * dim));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const std::size_t head = g.edges[e].head;
    for (std::size_t k = 0; k < dim; ++k) {
      out(idx(head * dim + k), idx(e * dim + k)) = 1.0 - w[e];
    }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> InteractionGraph::in_degrees() const {
  std::vector<std::size_t> deg(nodes, 0);
  for (const Edge& e : edges) ++deg[e.head];
  return deg;
}

Eigen::MatrixXd InteractionGraph::incidence() const {
  MatrixXd d = MatrixXd::Zero(idx(nodes), idx(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    d(idx(edges[e].head), idx(e)) = 1.0;
    d(idx(edges[e].tail), idx(e)) = -1.0;
  }
  return d;
}

InteractionGraph make_graph(std::size_t nodes, std::vector<Edge> edges) {
  for (const Edge& e : edges) {
    if (e.head >= nodes || e.tail >= nodes) {
      throw_error(ErrorKind::IndexOutOfRange, "edge endpoint out of range");
    }
    if (e.head == e.tail) {
      throw_error(ErrorKind::Config, "self-loop on node " + std::to_string(e.head));
    }
  }
  return InteractionGraph{nodes, std::move(edges)};
}

InteractionGraph build_graph(std::span<const core::AgentState> states,
                             std::span<const core::InteractionParams> params) {
  check_sizes(states, params);
  InteractionGraph g;
  g.nodes = states.size();
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (i == j) continue;
      if ((states[j].position - states[i].position).norm() <= params[i].radius) {
        g.edges.push_back({j, i});
      }
    }
  }
  return g;
}

Eigen::MatrixXd laplacian(const InteractionGraph& g) {
  const MatrixXd d = g.incidence();
  return d * d.transpose();
}

Eigen::VectorXd WeightedIncidence::w_bar(const InteractionGraph& g,
                                         std::size_t node) const {
  VectorXd out = VectorXd::Zero(idx(g.edges.size()));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (g.edges[e].head == node) out(idx(e)) = 1.0 - w[e];
  }
  return out;
}

Eigen::VectorXd WeightedIncidence::w_hat(const InteractionGraph& g,
                                         std::size_t node) const {
  VectorXd out = VectorXd::Zero(idx(g.edges.size()));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (g.edges[e].head == node) out(idx(e)) = 1.0 - w_tilde[e];
  }
  return out;
}

Eigen::MatrixXd WeightedIncidence::d_bar(const InteractionGraph& g,
                                         std::size_t dim) const {
  return weighted_rows(g, w, dim);
}

Eigen::MatrixXd WeightedIncidence::d_hat(const InteractionGraph& g,
                                         std::size_t dim) const {
  return weighted_rows(g, w_tilde, dim);
}

WeightedIncidence weighted_incidence(const InteractionGraph& g,
                                     std::span<const core::AgentState> states,
                                     std::span<const core::InteractionParams> params) {
  check_sizes(states, params);
  const std::vector<std::size_t> deg = g.in_degrees();
  WeightedIncidence wi;
  wi.w.resize(g.edges.size());
  wi.w_tilde.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [j, i] = g.edges[e];
    const double dist = (states[j].position - states[i].position).norm();
    const double speed = (states[j].velocity - states[i].velocity).norm();
    if (dist < core::kPositionGuard) {
      Error err(ErrorKind::OracleInapplicable,
                "coincident edge (" + std::to_string(j) + " -> " + std::to_string(i) +
                    "): global form undefined");
      err.pair = std::make_pair(i, j);
      throw err;
    }
    const double count = static_cast<double>(deg[i]);
    const core::InteractionParams& p = params[i];
    wi.w[e] = std::pow(p.delta * count / dist, p.alpha);
    // Unit weight removes the alignment term, as the per-agent guard does.
    wi.w_tilde[e] = speed < core::kVelocityGuard
                        ? 1.0
                        : std::pow(p.eta / (count * speed), p.beta);
  }
  return wi;
}

Eigen::MatrixXd incidence_transpose_kron(const InteractionGraph& g, std::size_t dim) {
  MatrixXd out = MatrixXd::Zero(idx(g.edges.size() * dim), idx(g.nodes * dim));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (std::size_t k = 0; k < dim; ++k) {
      out(idx(e * dim + k), idx(g.edges[e].head * dim + k)) = 1.0;
      out(idx(e * dim + k), idx(g.edges[e].tail * dim + k)) = -1.0;
    }
  }
  return out;
}

Eigen::VectorXd stack_positions(std::span<const core::AgentState> states) {
  const std::size_t dim = dimension(states);
  VectorXd out(idx(states.size() * dim));
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.segment(idx(i * dim), idx(dim)) = states[i].position;
  }
  return out;
}

Eigen::VectorXd stack_velocities(std::span<const core::AgentState> states) {
  const std::size_t dim = dimension(states);
  VectorXd out(idx(states.size() * dim));
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.segment(idx(i * dim), idx(dim)) = states[i].velocity;
  }
  return out;
}

Eigen::VectorXd global_rhs_dense(std::span<const core::AgentState> states,
                                 std::span<const core::InteractionParams> params) {
  const std::size_t dim = dimension(states);
  const InteractionGraph g = build_graph(states, params);
  const WeightedIncidence wi = weighted_incidence(g, states, params);
  const MatrixXd dt_kron = incidence_transpose_kron(g, dim);
  return -wi.d_bar(g, dim) * (dt_kron * stack_positions(states)) -
         wi.d_hat(g, dim) * (dt_kron * stack_velocities(states));
}

Eigen::VectorXd global_rhs_matrix_free(std::span<const core::AgentState> states,
                                       std::span<const core::InteractionParams> params) {
  const std::size_t dim = dimension(states);
  const InteractionGraph g = build_graph(states, params);
  const WeightedIncidence wi = weighted_incidence(g, states, params);
  const VectorXd dp = scatter_edges(g, stack_positions(states), dim);
  const VectorXd dv = scatter_edges(g, stack_velocities(states), dim);
  return -gather_heads(g, one_minus(wi.w), dp, dim) -
         gather_heads(g, one_minus(wi.w_tilde), dv, dim);
}

Eigen::VectorXd global_rhs(std::span<const core::AgentState> states,
                           std::span<const core::InteractionParams> params) {
  if (states.size() <= kDenseNodeLimit) return global_rhs_dense(states, params);
  return global_rhs_matrix_free(states, params);
}

EdgeState edge_state(const InteractionGraph& g, const WeightedIncidence& wi,
                     std::span<const core::AgentState> states) {
  const std::size_t dim = dimension(states);
  EdgeState es;
  es.dim = dim;
  es.e = -scatter_edges(g, stack_positions(states), dim);
  es.e_dot = -scatter_edges(g, stack_velocities(states), dim);
  es.q.resize(es.e.size());
  es.q_tilde.resize(es.e.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    es.q.segment(idx(e * dim), idx(dim)) = wi.w[e] * es.e.segment(idx(e * dim), idx(dim));
    es.q_tilde.segment(idx(e * dim), idx(dim)) =
        wi.w_tilde[e] * es.e_dot.segment(idx(e * dim), idx(dim));
  }
  return es;
}

EdgeErrors edge_errors(std::span<const core::AgentState> states,
                       std::span<const core::InteractionParams> params) {
  check_sizes(states, params);
  const std::size_t n = states.size();
  const std::size_t dim = dimension(states);
  const InteractionGraph g = build_graph(states, params);
  const std::vector<std::size_t> deg = g.in_degrees();

  EdgeErrors out;
  out.agent_position_mean.assign(n, zero_vec(dim));
  out.agent_velocity_mean.assign(n, zero_vec(dim));
  out.agent_position_valid.assign(n, false);
  out.agent_velocity_valid.assign(n, false);
  std::vector<std::size_t> pos_count(n, 0), vel_count(n, 0);

  for (const Edge& edge : g.edges) {
    const std::size_t i = edge.head;
    const std::size_t j = edge.tail;
    const core::InteractionParams& p = params[i];
    const double count = static_cast<double>(deg[i]);
    EdgeResidual r{j, i, zero_vec(dim), zero_vec(dim)};

    const Vec dp = states[j].position - states[i].position;
    const double dist = dp.norm();
    if (dist < core::kPositionGuard) {
      r.position_degenerate = true;
    } else {
      r.position = dp - std::pow(p.delta * count / dist, p.alpha) * dp;
      out.agent_position_mean[i] += r.position;
      ++pos_count[i];
    }

    const Vec dv = states[j].velocity - states[i].velocity;
    const double speed = dv.norm();
    if (speed < core::kVelocityGuard) {
      r.velocity_degenerate = true;
    } else {
      r.velocity = dv - std::pow(p.eta / (count * speed), p.beta) * dv;
      out.agent_velocity_mean[i] += r.velocity;
      ++vel_count[i];
    }
    out.edges.push_back(std::move(r));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (pos_count[i] > 0) {
      out.agent_position_mean[i] /= static_cast<double>(pos_count[i]);
      out.agent_position_valid[i] = true;
    }
    if (vel_count[i] > 0) {
      out.agent_velocity_mean[i] /= static_cast<double>(vel_count[i]);
      out.agent_velocity_valid[i] = true;
    }
  }
  return out;
}

LyapunovOperators lyapunov_operators(const InteractionGraph& g,
                                     const WeightedIncidence& wi, std::size_t dim) {
  const MatrixXd dt_kron = incidence_transpose_kron(g, dim);
  return {dt_kron * wi.d_hat(g, dim), dt_kron * wi.d_bar(g, dim)};
}

LyapunovValue lyapunov_value(const EdgeState& es, const WeightedIncidence& wi,
                             const InteractionGraph& g) {
  LyapunovValue out;
  if (g.edges.empty()) return out;
  const std::size_t dim = es.dim;

  VectorXd be, be_dot, ae_dot;
  if (g.nodes <= kDenseNodeLimit) {
    const LyapunovOperators ops = lyapunov_operators(g, wi, dim);
    be = ops.b * es.e;
    be_dot = ops.b * es.e_dot;
    ae_dot = ops.a * es.e_dot;
  } else {
    const std::vector<double> wb = one_minus(wi.w);
    const std::vector<double> wh = one_minus(wi.w_tilde);
    be = scatter_edges(g, gather_heads(g, wb, es.e, dim), dim);
    be_dot = scatter_edges(g, gather_heads(g, wb, es.e_dot, dim), dim);
    ae_dot = scatter_edges(g, gather_heads(g, wh, es.e_dot, dim), dim);
  }

  out.v = 0.5 * es.e_dot.squaredNorm() + 0.5 * es.e.dot(be);
  out.v_dot = -es.e_dot.dot(ae_dot);
  out.v_dot_exact = out.v_dot + 0.5 * (es.e.dot(be_dot) - es.e_dot.dot(be));
  return out;
}

double symmetric_part_min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool has_spanning_tree(const InteractionGraph& g) {
  if (g.nodes == 0) return false;
  // Walk edges backwards from each candidate root.
  std::vector<std::vector<std::size_t>> senders(g.nodes);
  for (const Edge& e : g.edges) senders[e.head].push_back(e.tail);

  for (std::size_t root = 0; root < g.nodes; ++root) {
    std::vector<bool> seen(g.nodes, false);
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      for (std::size_t s : senders[node]) {
        if (!seen[s]) {
          seen[s] = true;
          ++reached;
          queue.push_back(s);
        }
      }
    }
    if (reached == g.nodes) return true;
  }
  return false;
}

}  // namespace swarmkit::graph
