#pragma once

// Graph-theoretic global form of the interaction law.
//
// Edge (tail -> head) means the head agent receives from the tail agent, i.e.
// tail is in the head's neighborhood. The incidence matrix D has +1 at the
// head and -1 at the tail of every column. The per-node weighted incidence
// rows only carry the edges the node receives on; the stacked dynamics
//
//   dv/dt = -Dbar (D^T (x) I_m) p - Dhat (D^T (x) I_m) v
//
// then reproduce the per-agent sums of core::interaction_acceleration term by
// term. This module computes everything from positions and velocities on its
// own so it can serve as an independent check on the per-agent code path.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "swarmkit/core.hpp"

namespace swarmkit::graph {

/// Above this node count the operators are applied edge by edge instead of
/// through dense matrices.
inline constexpr std::size_t kDenseNodeLimit = 64;

struct Edge {
  std::size_t tail;  // sender j
  std::size_t head;  // receiver i
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct InteractionGraph {
  std::size_t nodes = 0;
  std::vector<Edge> edges;  // column order of D

  /// In-degree |N_i| of every node.
  std::vector<std::size_t> in_degrees() const;

  /// Dense |V| x |E| incidence matrix.
  Eigen::MatrixXd incidence() const;
};

/// Graph from an explicit edge list; rejects self-loops and bad indices.
InteractionGraph make_graph(std::size_t nodes, std::vector<Edge> edges);

/// Proximity graph: edge (j -> i) for every j within params[i].radius of i,
/// ordered by (i, j).
InteractionGraph build_graph(std::span<const core::AgentState> states,
                             std::span<const core::InteractionParams> params);

/// L = D D^T.
Eigen::MatrixXd laplacian(const InteractionGraph& g);

/// Per-edge offset weights. Each edge is owned by its head node; w_bar and
/// w_hat restricted to node i are (1 - w_e) and (1 - w~_e) on the edges i
/// owns and zero elsewhere.
struct WeightedIncidence {
  std::vector<double> w;        // (delta_i |N_i| / |dp|)^alpha
  std::vector<double> w_tilde;  // (eta_i / (|N_i| |dv|))^beta

  Eigen::VectorXd w_bar(const InteractionGraph& g, std::size_t node) const;
  Eigen::VectorXd w_hat(const InteractionGraph& g, std::size_t node) const;

  /// Stacked [d_i Wbar_i] (x) I_m, size (|V| m) x (|E| m).
  Eigen::MatrixXd d_bar(const InteractionGraph& g, std::size_t dim) const;
  /// Stacked [d_i What_i] (x) I_m.
  Eigen::MatrixXd d_hat(const InteractionGraph& g, std::size_t dim) const;
};

/// Throws OracleInapplicable when an edge has |dp| below the position guard.
/// Edges with |dv| below the velocity guard get w_tilde = 1, which drops their
/// alignment term exactly as core::interaction_acceleration does.
WeightedIncidence weighted_incidence(const InteractionGraph& g,
                                     std::span<const core::AgentState> states,
                                     std::span<const core::InteractionParams> params);

/// D^T (x) I_m as a dense matrix.
Eigen::MatrixXd incidence_transpose_kron(const InteractionGraph& g, std::size_t dim);

Eigen::VectorXd stack_positions(std::span<const core::AgentState> states);
Eigen::VectorXd stack_velocities(std::span<const core::AgentState> states);

/// Stacked accelerations from the global form. Dense products up to
/// kDenseNodeLimit nodes, edge-list products above.
Eigen::VectorXd global_rhs(std::span<const core::AgentState> states,
                           std::span<const core::InteractionParams> params);
Eigen::VectorXd global_rhs_dense(std::span<const core::AgentState> states,
                                 std::span<const core::InteractionParams> params);
Eigen::VectorXd global_rhs_matrix_free(std::span<const core::AgentState> states,
                                       std::span<const core::InteractionParams> params);

struct EdgeState {
  Eigen::VectorXd e;        // (-D^T (x) I_m) p, i.e. p_tail - p_head per edge
  Eigen::VectorXd e_dot;    // (-D^T (x) I_m) v
  Eigen::VectorXd q;        // stacked p_ij
  Eigen::VectorXd q_tilde;  // stacked v_ij
  std::size_t dim = 0;
};

EdgeState edge_state(const InteractionGraph& g, const WeightedIncidence& wi,
                     std::span<const core::AgentState> states);

struct EdgeResidual {
  std::size_t tail;
  std::size_t head;
  Vec position;  // dp - p_ij
  Vec velocity;  // dv - v_ij
  bool position_degenerate = false;
  bool velocity_degenerate = false;
};

struct EdgeErrors {
  std::vector<EdgeResidual> edges;
  /// (1/|N_i|) sum over valid in-edges; zero vector with valid flag false
  /// for agents without any valid in-edge.
  std::vector<Vec> agent_position_mean;
  std::vector<Vec> agent_velocity_mean;
  std::vector<bool> agent_position_valid;
  std::vector<bool> agent_velocity_valid;
};

/// Edge interaction residuals for the current proximity graph. Degenerate
/// edges carry zero residual, are flagged and are left out of the averages.
EdgeErrors edge_errors(std::span<const core::AgentState> states,
                       std::span<const core::InteractionParams> params);

struct LyapunovOperators {
  Eigen::MatrixXd a;  // (D^T (x) I_m) Dhat
  Eigen::MatrixXd b;  // (D^T (x) I_m) Dbar
};

LyapunovOperators lyapunov_operators(const InteractionGraph& g,
                                     const WeightedIncidence& wi, std::size_t dim);

struct LyapunovValue {
  double v = 0.0;      // 1/2 e_dot' e_dot + 1/2 e' B e
  double v_dot = 0.0;  // -e_dot' A e_dot
  /// Derivative along the frozen edge dynamics without assuming B symmetric:
  /// v_dot + 1/2 e_dot' (B' - B) e.
  double v_dot_exact = 0.0;
};

/// Lyapunov function and its derivative with the weights frozen at the
/// current state. Dense up to kDenseNodeLimit nodes, edge-list above.
LyapunovValue lyapunov_value(const EdgeState& es, const WeightedIncidence& wi,
                             const InteractionGraph& g);

/// Smallest eigenvalue of (M + M^T) / 2.
double symmetric_part_min_eigenvalue(const Eigen::MatrixXd& m);

/// True iff some node is reachable along directed edges from every node.
bool has_spanning_tree(const InteractionGraph& g);

}  // namespace swarmkit::graph
