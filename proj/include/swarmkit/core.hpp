#pragma once

// Per-agent interaction law: neighborhoods, the aggregation/alignment weight
// functions, offset vectors, tanh velocity saturation and the Cucker-Smale
// alignment baseline.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "swarmkit/vec.hpp"

namespace swarmkit::core {

/// Below this separation two agents are treated as coincident (meters).
inline constexpr double kPositionGuard = 1e-9;
/// Below this relative speed a pair contributes no alignment term (m/s).
inline constexpr double kVelocityGuard = 1e-9;

struct AgentState {
  Vec position;
  Vec velocity;

  std::size_t dim() const { return dim_of(position); }
};

struct InteractionParams {
  double delta = 1.0;   // spatial offset (m)
  double eta = 0.0;     // kinetic offset
  double alpha = 2.0;   // aggregation steepness
  double beta = 1.0;    // alignment steepness
  double radius = 10.0; // interaction radius (m)
  double v_max = 5.0;   // maximum speed (m/s)
  double t_vmax = 1.0;  // time to reach v_max (s)

  /// Acceleration magnitude limit s = v_max / t_vmax (m/s^2).
  double rate_limit() const { return v_max / t_vmax; }

  /// Throws a Config error naming the first violated constraint.
  void validate() const;
};

struct Neighborhood {
  std::vector<std::size_t> members;  // ascending

  std::size_t count() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

struct CuckerSmaleParams {
  double k_gain = 1.0;
  double sigma_cs = 1.0;
  double gamma = 0.5;

  void validate() const;
};

/// Pair-level bookkeeping of which singular-pair guards fired.
struct GuardReport {
  std::size_t coincident_pairs = 0;
  std::size_t zero_relative_velocity_pairs = 0;

  GuardReport& operator+=(const GuardReport& o) {
    coincident_pairs += o.coincident_pairs;
    zero_relative_velocity_pairs += o.zero_relative_velocity_pairs;
    return *this;
  }
};

/// Indices j != i with |p_j - p_i| <= radius. The boundary is included.
Neighborhood neighborhood(std::size_t i, std::span<const AgentState> states,
                          double radius);

/// 1 - (delta * count / distance)^alpha. Positive pulls together, negative
/// pushes apart; zero at distance == delta * count.
double psi_weight(double distance, double delta, std::size_t count, double alpha);

/// 1 - (eta / (count * speed_diff))^beta; zero at speed_diff == eta / count.
double phi_weight(double speed_diff, double eta, std::size_t count, double beta);

/// Sum of psi-weighted displacements and phi-weighted velocity differences
/// over the in-neighborhood of agent i.
///
/// Coincident neighbors (|dp| < kPositionGuard) contribute a separation of
/// magnitude |psi(kPositionGuard)| along the first coordinate axis, pushing
/// the lower index toward -x and the higher toward +x. Pairs with
/// |dv| < kVelocityGuard contribute no alignment term.
Vec interaction_acceleration(std::size_t i, std::span<const AgentState> states,
                             const InteractionParams& params,
                             const Neighborhood& nbrs,
                             GuardReport* guards = nullptr);

/// Convenience overload that builds the neighborhood from params.radius.
Vec interaction_acceleration(std::size_t i, std::span<const AgentState> states,
                             const InteractionParams& params);

struct OffsetVectors {
  Vec position;  // p_ij
  Vec velocity;  // v_ij
};

/// Displacement and velocity offset vectors of the directed pair (i <- j),
/// using |N_i| from the neighborhood of i under params.radius.
/// Throws DegeneratePair when either guard would fire.
OffsetVectors offset_vectors(std::size_t i, std::size_t j,
                             std::span<const AgentState> states,
                             const InteractionParams& params);

OffsetVectors offset_vectors(std::size_t i, std::size_t j,
                             std::span<const AgentState> states,
                             const InteractionParams& params,
                             std::size_t neighbor_count);

/// v_max * tanh(|v| / v_max) * v / |v|; returns v unchanged below the
/// velocity guard.
Vec saturate_velocity(const Vec& v, double v_max);

/// Sum over all j of K / (sigma^2 + |dp|)^gamma * (v_j - v_i).
Vec cucker_smale_acceleration(std::size_t i, std::span<const AgentState> states,
                              const CuckerSmaleParams& cs);

}  // namespace swarmkit::core
