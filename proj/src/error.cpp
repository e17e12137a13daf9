#include "tgqsl/error.hpp"

namespace tgqsl {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_state: return "invalid-state";
    case ErrorKind::grid_too_small: return "grid-too-small";
    case ErrorKind::propagation_diverged: return "propagation-diverged";
    case ErrorKind::design_infeasible: return "design-infeasible";
    case ErrorKind::oracle_failure: return "oracle-failure";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

}  // namespace tgqsl
