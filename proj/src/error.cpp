#include "swarmkit/error.hpp"

namespace swarmkit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::IndexOutOfRange: return "index out of range";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::DegeneratePair: return "degenerate pair";
    case ErrorKind::OracleInapplicable: return "oracle inapplicable";
    case ErrorKind::Io: return "i/o error";
  }
  return "unknown error";
}

void throw_error(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

void throw_pair_error(ErrorKind kind, const std::string& message, std::size_t i,
                      std::size_t j) {
  Error err(kind, message + " (pair " + std::to_string(i) + ", " +
                      std::to_string(j) + ")");
  err.pair = std::make_pair(i, j);
  throw err;
}

}  // namespace swarmkit
