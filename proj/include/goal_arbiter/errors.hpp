#ifndef GOAL_ARBITER_ERRORS_HPP
#define GOAL_ARBITER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace goal_arbiter {

enum class ErrorKind {
  SyntaxError,
  UndeclaredSymbol,
  DisjointnessViolation,
  DuplicateResourceDeclaration,
  DuplicateGoalDeclaration,
  PreferenceOutOfRange,
  HeadInOwnPremise,
  UnknownResource,
  UnknownGoal,
  CyclicGoalDependency,
  NoRuleForGoal,
  MixedStores,
  MissingPreference,
  SizeBoundExceeded,
  IoError,
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorKind::DisjointnessViolation: return "DisjointnessViolation";
    case ErrorKind::DuplicateResourceDeclaration: return "DuplicateResourceDeclaration";
    case ErrorKind::DuplicateGoalDeclaration: return "DuplicateGoalDeclaration";
    case ErrorKind::PreferenceOutOfRange: return "PreferenceOutOfRange";
    case ErrorKind::HeadInOwnPremise: return "HeadInOwnPremise";
    case ErrorKind::UnknownResource: return "UnknownResource";
    case ErrorKind::UnknownGoal: return "UnknownGoal";
    case ErrorKind::CyclicGoalDependency: return "CyclicGoalDependency";
    case ErrorKind::NoRuleForGoal: return "NoRuleForGoal";
    case ErrorKind::MixedStores: return "MixedStores";
    case ErrorKind::MissingPreference: return "MissingPreference";
    case ErrorKind::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message +
                           (line ? " (line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ")"
                                 : std::string())),
        kind_(kind),
        line_(line),
        column_(column) {}

  ErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_ERRORS_HPP
