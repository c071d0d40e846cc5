#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moduli {

enum class ErrorKind {
  NonDiscriminant,
  DomainError,
  PrecisionUnreachable,
  PrecisionInconclusive,
  NoConvergence,
  NearCriticalPoint,
  CornerPoint,
  MissingEmbeddingData,
  SingularCurve,
  NotUnitConsistent,
  HypothesisUnmet,
  ViolationFound,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace moduli
