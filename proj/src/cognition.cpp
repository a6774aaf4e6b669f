#include "swarmkit/cognition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swarmkit/error.hpp"

namespace swarmkit::cognition {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw_error(ErrorKind::Config, std::string("invalid energy model: ") + what);
}

}  // namespace

void EnergyState::validate() const {
  require(std::isfinite(initial), "initial energy must be finite");
  require(std::isfinite(c1) && c1 > 0.0, "c1 must be > 0");
  require(std::isfinite(c2) && c2 > 0.0, "c2 must be > 0");
}

void AdaptationParams::validate() const {
  require(std::isfinite(delta_min) && delta_min >= 0.0, "delta_min must be >= 0");
  require(std::isfinite(delta_max) && delta_min <= delta_max, "delta_min <= delta_max");
  require(std::isfinite(eta_min) && eta_min >= 0.0, "eta_min must be >= 0");
  require(std::isfinite(eta_max) && eta_min <= eta_max, "eta_min <= eta_max");
  require(std::isfinite(k_delta) && k_delta > 0.0, "k_delta must be > 0");
  require(std::isfinite(k_eta) && k_eta > 0.0, "k_eta must be > 0");
  require(std::isfinite(e_th), "e_th must be finite");
}

double energy_derivative(const Vec& accel, double c1, double c2) {
  return -c1 * accel.squaredNorm() - c2;
}

double low_energy_fraction(std::span<const double> energies,
                           const core::Neighborhood& nbrs, double e_th) {
  if (nbrs.empty()) return 0.0;
  std::size_t low = 0;
  for (std::size_t j : nbrs.members) {
    if (energies[j] < e_th) ++low;
  }
  return static_cast<double>(low) / static_cast<double>(nbrs.count());
}

double adaptive_threshold(std::span<const double> energies,
                          const core::Neighborhood& nbrs, double e_th) {
  if (nbrs.empty()) return e_th;
  const double mu = low_energy_fraction(energies, nbrs, e_th);
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t j : nbrs.members) lowest = std::min(lowest, energies[j]);
  return e_th - mu * (e_th - lowest);
}

double adaptive_offset(double energy, double threshold, double lo, double hi,
                       double gain) {
  return lo + (hi - lo) / (1.0 + std::exp(-gain * (energy - threshold)));
}

double adaptive_delta(double energy, double threshold, const AdaptationParams& p) {
  return adaptive_offset(energy, threshold, p.delta_min, p.delta_max, p.k_delta);
}

double adaptive_eta(double energy, double threshold, const AdaptationParams& p) {
  return adaptive_offset(energy, threshold, p.eta_min, p.eta_max, p.k_eta);
}

std::vector<core::InteractionParams> apply_adaptation(
    std::span<const double> energies, std::span<const core::Neighborhood> nbrs,
    std::span<const core::InteractionParams> params, const AdaptationParams& adapt) {
  std::vector<core::InteractionParams> out(params.begin(), params.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double threshold = adaptive_threshold(energies, nbrs[i], adapt.e_th);
    out[i].delta = adaptive_delta(energies[i], threshold, adapt);
    out[i].eta = adaptive_eta(energies[i], threshold, adapt);
  }
  return out;
}

std::vector<core::InteractionParams> apply_adaptation(
    std::span<const core::AgentState> states, std::span<const double> energies,
    std::span<const core::InteractionParams> params, const AdaptationParams& adapt,
    bool enabled) {
  if (!enabled) return {params.begin(), params.end()};
  std::vector<core::Neighborhood> nbrs;
  nbrs.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    nbrs.push_back(core::neighborhood(i, states, params[i].radius));
  }
  return apply_adaptation(energies, nbrs, params, adapt);
}

}  // namespace swarmkit::cognition
