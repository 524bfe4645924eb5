#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoquad {

enum class ErrorKind {
  kInvalidQuadrilateral,
  kDegenerateJacobian,
  kNonPositiveFactor,
  kKappaOutOfRange,
  kInvalidScheme,
  kComplexSpectrum,
  kBifurcationDetected,
  kInvalidStep,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (search, traces, CLI) can count or map it without string parsing.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace isoquad
