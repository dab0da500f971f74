#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chipfire {

enum class ErrorKind {
  // multigraph / parsing
  ParseError,
  LoopRejected,
  UnknownNode,
  BadMultiplicity,
  DuplicateNode,
  DegenerateCut,
  Disconnected,
  // divisor algebra
  InsufficientChips,
  NotEquivalent,
  NotEffective,
  ClassTooLarge,
  InvariantViolation,
  BadDivisorLiteral,
  // gonality search
  SearchCapped,
  // reduction gadget
  NotIndependent,
  NameCollision,
  ScheduleBroken,
  RankRefuted,
  InconsistentInput,
  // oracles
  OracleTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error carrying a machine-readable kind. Everything the library
/// rejects is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chipfire
