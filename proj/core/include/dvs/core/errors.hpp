#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dvs {

enum class ErrorKind {
  io,             // filesystem or stream failure
  infeasible,     // a constraint or budget cannot be met
  invalid_input,  // malformed files, bad parameters, broken invariants
  corruption,     // digest mismatch or damaged repository state
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit code for the CLI: 0 ok, 1 io, 2 infeasible, 3 invalid input,
/// 4 corruption.
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace dvs
