#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pons {

enum class ErrorCode {
  DegenerateSegment,
  DegenerateAngle,
  DegenerateFact,
  UnknownPremise,
  PremiseMismatch,
  SideConditionFailed,
  DegenerateInstantiation,
  BadInstantiation,
  UnknownPoint,
  PointAlreadyDefined,
  LayoffWithoutBound,
  HypothesisNotSatisfied,
  AbsurdOutsideCase,
  UnclosedGoal,
  SyntaxError,
  UnresolvedLabel,
  DuplicateLabel,
  UnknownRule,
  UnknownLemma,
  DuplicateNode,
  UnknownNode,
  InvalidNode,
  DomainError,
  MissingPoint,
  SamplingFailed,
  GeodesicOutOfDomain,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above, so
// callers (tests, CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pons
