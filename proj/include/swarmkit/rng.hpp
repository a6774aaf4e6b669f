#pragma once

#include <cstdint>
#include <random>

namespace swarmkit {

/// SplitMix64 finalizer applied to `x + golden * (stream + 1)`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Per-agent random stream: std::mt19937_64 seeded with
/// derive_stream_seed(seed, agent). Both the engine and the double mapping
/// (top 53 bits scaled by 2^-53) are fully specified, so streams are
/// identical across platforms and standard libraries.
class AgentStream {
 public:
  AgentStream(std::uint64_t seed, std::uint64_t agent)
      : engine_(derive_stream_seed(seed, agent)) {}

  /// Uniform in [0, 1).
  double unit() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// lo + (hi - lo) * unit(); exactly lo when lo == hi.
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace swarmkit
