#include "satlab/error.hpp"

namespace satlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace satlab
