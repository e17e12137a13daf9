#pragma once

#include <stdexcept>
#include <string>

namespace tgqsl {

/// Failure categories shared by every module. The CLI maps them to exit codes.
enum class ErrorKind {
  invalid_argument,
  invalid_state,
  grid_too_small,
  propagation_diverged,
  design_infeasible,
  oracle_failure,
  config,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace tgqsl
