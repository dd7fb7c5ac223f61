#pragma once

#include <stdexcept>
#include <string>
#include <type_traits>
#include <string_view>

namespace posadisc {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  OutOfRange,
  Containment,
  BudgetExhausted,
  NotFound,
  Unrealizable,
  Stage,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::OutOfRange: return "out_of_range";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::BudgetExhausted: return "budget_exhausted";
    case ErrorKind::NotFound: return "not_found";
    case ErrorKind::Unrealizable: return "unrealizable";
    case ErrorKind::Stage: return "stage";
  }
  return "unknown";
}

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

// message built only on failure; for checks inside hot loops
template <class F>
  requires std::is_invocable_r_v<std::string, F>
inline void require(bool condition, ErrorKind kind, F&& message) {
  if (!condition) fail(kind, message());
}

}  // namespace posadisc
