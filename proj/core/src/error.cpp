#include "toric_ic/error.hpp"

namespace toric_ic {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::NotDescendable: return "NotDescendable";
    case ErrorKind::UnknownCone: return "UnknownCone";
    case ErrorKind::SupportTooDeep: return "SupportTooDeep";
    case ErrorKind::PerversityUndefined: return "PerversityUndefined";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace toric_ic
