#pragma once

#include <stdexcept>
#include <string>

namespace mwlab {

enum class ErrorCode {
  invalid_argument,  // precondition violation
  grid_mismatch,     // fields on different grids
  domain,            // loop outside grid, node on loop, undefined samples hit
  numerical,         // NaN detected, unreliable estimate
  io,                // file format / filesystem failure
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace mwlab
