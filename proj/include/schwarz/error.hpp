#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schwarz {

enum class ErrorCode {
  SingularMatrix,
  DimensionMismatch,
  NoConvergence,
  SizeLimitExceeded,
  DominanceViolated,
  PreconditionFailed,
  InvalidParameter,
  Breakdown,
  MaxIterExceeded,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending block or parameter where there is one.
class SchwarzError : public std::runtime_error {
public:
  SchwarzError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::DominanceViolated: return "DominanceViolated";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::Breakdown: return "Breakdown";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
  }
  return "Unknown";
}

}  // namespace schwarz
