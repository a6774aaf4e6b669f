#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "swarmkit/core.hpp"

namespace testing {

using swarmkit::Vec;
using swarmkit::core::AgentState;

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

inline AgentState agent(std::initializer_list<double> p, std::initializer_list<double> v) {
  return {vec(p), vec(v)};
}

inline std::vector<AgentState> random_states(std::mt19937_64& rng, std::size_t n,
                                             std::size_t dim, double pos_hi = 10.0,
                                             double vel = 1.0) {
  std::uniform_real_distribution<double> pos(0.0, pos_hi);
  std::uniform_real_distribution<double> v(-vel, vel);
  std::vector<AgentState> out;
  for (std::size_t i = 0; i < n; ++i) {
    AgentState s{Vec(static_cast<Eigen::Index>(dim)), Vec(static_cast<Eigen::Index>(dim))};
    for (std::size_t k = 0; k < dim; ++k) s.position[static_cast<Eigen::Index>(k)] = pos(rng);
    for (std::size_t k = 0; k < dim; ++k) s.velocity[static_cast<Eigen::Index>(k)] = v(rng);
    out.push_back(s);
  }
  return out;
}

// Plain-array re-summation of the interaction law; no Eigen, no guards.
inline std::vector<double> scalar_interaction(std::size_t i,
                                              const std::vector<AgentState>& s,
                                              double delta, double eta, double alpha,
                                              double beta, double radius) {
  const std::size_t m = static_cast<std::size_t>(s[i].position.size());
  std::vector<std::size_t> nbrs;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == i) continue;
    double d2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double d = s[j].position[static_cast<Eigen::Index>(k)] -
                       s[i].position[static_cast<Eigen::Index>(k)];
      d2 += d * d;
    }
    if (std::sqrt(d2) <= radius) nbrs.push_back(j);
  }
  std::vector<double> acc(m, 0.0);
  const double count = static_cast<double>(nbrs.size());
  for (std::size_t j : nbrs) {
    double dp[3], dv[3], np = 0.0, nv = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      dp[k] = s[j].position[kk] - s[i].position[kk];
      dv[k] = s[j].velocity[kk] - s[i].velocity[kk];
      np += dp[k] * dp[k];
      nv += dv[k] * dv[k];
    }
    np = std::sqrt(np);
    nv = std::sqrt(nv);
    const double psi = 1.0 - std::pow(delta * count / np, alpha);
    const double phi = 1.0 - std::pow(eta / (count * nv), beta);
    for (std::size_t k = 0; k < m; ++k) acc[k] += psi * dp[k] + phi * dv[k];
  }
  return acc;
}

}  // namespace testing
