#include "projnorm/error.hpp"

namespace projnorm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnderflowRisk: return "UnderflowRisk";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NotASymmetry: return "NotASymmetry";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::SolveFailure: return "SolveFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace projnorm
