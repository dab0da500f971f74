#include "chipfire/error.hpp"

namespace chipfire {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::LoopRejected: return "LoopRejected";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::BadMultiplicity: return "BadMultiplicity";
    case ErrorKind::DuplicateNode: return "DuplicateNode";
    case ErrorKind::DegenerateCut: return "DegenerateCut";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::InsufficientChips: return "InsufficientChips";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::NotEffective: return "NotEffective";
    case ErrorKind::ClassTooLarge: return "ClassTooLarge";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::BadDivisorLiteral: return "BadDivisorLiteral";
    case ErrorKind::SearchCapped: return "SearchCapped";
    case ErrorKind::NotIndependent: return "NotIndependent";
    case ErrorKind::NameCollision: return "NameCollision";
    case ErrorKind::ScheduleBroken: return "ScheduleBroken";
    case ErrorKind::RankRefuted: return "RankRefuted";
    case ErrorKind::InconsistentInput: return "InconsistentInput";
    case ErrorKind::OracleTooLarge: return "OracleTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace chipfire
