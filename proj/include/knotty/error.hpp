#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knotty {

enum class ErrorKind {
  Syntax,
  Validation,
  InapplicableMove,
  CrossingCapExceeded,
  VariableMismatch,
  BudgetExceeded,
  NonKnotExponent,
  Transport,
  Protocol,
  GenerationExhausted,
  BudgetViolation,
  InvalidConfig,
  GameOver,
  CorruptSession,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Syntax: return "SyntaxError";
  case ErrorKind::Validation: return "ValidationError";
  case ErrorKind::InapplicableMove: return "InapplicableMove";
  case ErrorKind::CrossingCapExceeded: return "CrossingCapExceeded";
  case ErrorKind::VariableMismatch: return "VariableMismatch";
  case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  case ErrorKind::NonKnotExponent: return "NonKnotExponent";
  case ErrorKind::Transport: return "TransportError";
  case ErrorKind::Protocol: return "ProtocolError";
  case ErrorKind::GenerationExhausted: return "GenerationExhausted";
  case ErrorKind::BudgetViolation: return "BudgetViolation";
  case ErrorKind::InvalidConfig: return "InvalidConfig";
  case ErrorKind::GameOver: return "GameOver";
  case ErrorKind::CorruptSession: return "CorruptSession";
  }
  return "Error";
}

/// Every failure raised by the library carries one of the kinds above so
/// that the CLI and HTTP layers can map it to an exit code or status.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
  throw Error(kind, message);
}

} // namespace knotty
