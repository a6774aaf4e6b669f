#pragma once

// Energy bookkeeping and energy-driven adaptation of the spatial and kinetic
// offsets, with a threshold that follows low-energy neighbors.

#include <cstddef>
#include <span>
#include <vector>

#include "swarmkit/core.hpp"

namespace swarmkit::cognition {

struct EnergyState {
  double energy = 80.0;
  double initial = 80.0;
  double c1 = 0.15;   // maneuvering drain coefficient
  double c2 = 0.015;  // idle drain coefficient

  void validate() const;
};

struct AdaptationParams {
  double delta_min = 0.5;
  double delta_max = 2.0;
  double eta_min = 3.0;
  double eta_max = 15.0;
  double k_delta = 0.5;
  double k_eta = 0.5;
  double e_th = 40.0;

  void validate() const;
};

/// dE/dt = -c1 |a|^2 - c2.
double energy_derivative(const Vec& accel, double c1, double c2);

/// Fraction of neighbors with energy strictly below e_th; 0 for an empty
/// neighborhood.
double low_energy_fraction(std::span<const double> energies,
                           const core::Neighborhood& nbrs, double e_th);

/// e_th - mu * (e_th - min neighbor energy); e_th for an empty neighborhood.
double adaptive_threshold(std::span<const double> energies,
                          const core::Neighborhood& nbrs, double e_th);

/// Logistic interpolation between lo and hi, centered at the threshold.
double adaptive_offset(double energy, double threshold, double lo, double hi,
                       double gain);

double adaptive_delta(double energy, double threshold, const AdaptationParams& p);
double adaptive_eta(double energy, double threshold, const AdaptationParams& p);

/// Per-agent params with delta and eta replaced by their energy-driven values.
/// Neighborhoods are taken from each agent's own radius. With enabled == false
/// the input is returned unchanged.
std::vector<core::InteractionParams> apply_adaptation(
    std::span<const core::AgentState> states, std::span<const double> energies,
    std::span<const core::InteractionParams> params, const AdaptationParams& adapt,
    bool enabled = true);

/// Same, reusing precomputed neighborhoods.
std::vector<core::InteractionParams> apply_adaptation(
    std::span<const double> energies, std::span<const core::Neighborhood> nbrs,
    std::span<const core::InteractionParams> params, const AdaptationParams& adapt);

}  // namespace swarmkit::cognition
