#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace swarmkit {

enum class ErrorKind {
  Config,
  Domain,
  IndexOutOfRange,
  Numeric,
  DegeneratePair,
  OracleInapplicable,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library. The kind selects the C API status
/// code; the optional context fields identify the offending agent(s) or step.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  std::optional<std::pair<std::size_t, std::size_t>> pair;
  std::optional<std::size_t> agent;
  std::optional<std::size_t> step;

 private:
  ErrorKind kind_;
};

[[noreturn]] void throw_error(ErrorKind kind, const std::string& message);

[[noreturn]] void throw_pair_error(ErrorKind kind, const std::string& message,
                                   std::size_t i, std::size_t j);

}  // namespace swarmkit
