#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace swarmkit {

/// Position/velocity vector in 2 or 3 dimensions. Inline storage, no heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

inline Vec zero_vec(std::size_t dim) {
  return Vec::Zero(static_cast<Eigen::Index>(dim));
}

inline std::size_t dim_of(const Vec& v) {
  return static_cast<std::size_t>(v.size());
}

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace swarmkit
