#include "isoquad/error.hpp"

#include <string>

namespace isoquad {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidQuadrilateral: return "InvalidQuadrilateral";
    case ErrorKind::kDegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::kNonPositiveFactor: return "NonPositiveFactor";
    case ErrorKind::kKappaOutOfRange: return "KappaOutOfRange";
    case ErrorKind::kInvalidScheme: return "InvalidScheme";
    case ErrorKind::kComplexSpectrum: return "ComplexSpectrum";
    case ErrorKind::kBifurcationDetected: return "BifurcationDetected";
    case ErrorKind::kInvalidStep: return "InvalidStep";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace isoquad
