#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minpath {

enum class ErrorCode {
  parse_error,
  invalid_argument,
  euler_violation,
  disconnected,
  infeasible,
  unbounded,
  iteration_limit,
  invalid_delta,
  invariant_violation,
  not_hitting,
  limit_exceeded,
  size_limit,
  empty_group,
  not_planar,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
    case ErrorCode::euler_violation: return "EULER_VIOLATION";
    case ErrorCode::disconnected: return "DISCONNECTED";
    case ErrorCode::infeasible: return "INFEASIBLE";
    case ErrorCode::unbounded: return "UNBOUNDED";
    case ErrorCode::iteration_limit: return "ITERATION_LIMIT";
    case ErrorCode::invalid_delta: return "INVALID_DELTA";
    case ErrorCode::invariant_violation: return "INVARIANT_VIOLATION";
    case ErrorCode::not_hitting: return "NOT_HITTING";
    case ErrorCode::limit_exceeded: return "LIMIT_EXCEEDED";
    case ErrorCode::size_limit: return "SIZE_LIMIT";
    case ErrorCode::empty_group: return "EMPTY_GROUP";
    case ErrorCode::not_planar: return "NOT_PLANAR";
  }
  return "UNKNOWN";
}

/// Domain error carrying a machine-readable code. The CLI maps codes to exit
/// statuses; everything else treats it as an ordinary exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minpath
