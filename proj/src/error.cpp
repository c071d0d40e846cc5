#include "moduli/error.hpp"

namespace moduli {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonDiscriminant: return "NonDiscriminant";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorKind::PrecisionInconclusive: return "PrecisionInconclusive";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NearCriticalPoint: return "NearCriticalPoint";
    case ErrorKind::CornerPoint: return "CornerPoint";
    case ErrorKind::MissingEmbeddingData: return "MissingEmbeddingData";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::NotUnitConsistent: return "NotUnitConsistent";
    case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorKind::ViolationFound: return "ViolationFound";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace moduli
