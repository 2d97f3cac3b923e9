#include "dvs/core/errors.hpp"

namespace dvs {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::corruption: return "corruption";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io: return 1;
    case ErrorKind::infeasible: return 2;
    case ErrorKind::invalid_input: return 3;
    case ErrorKind::corruption: return 4;
  }
  return 1;
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace dvs
