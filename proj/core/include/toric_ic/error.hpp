#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric_ic {

enum class ErrorKind {
  DimensionMismatch,
  NotSaturated,
  NotDescendable,
  UnknownCone,
  SupportTooDeep,
  PerversityUndefined,
  ParseError,
  ValidationError,
  UnknownName,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the
// CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace toric_ic
