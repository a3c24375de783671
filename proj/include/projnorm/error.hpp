#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projnorm {

enum class ErrorCode {
  InvalidParameter,
  UnderflowRisk,
  DegenerateSimplex,
  InvalidVertex,
  UnsupportedDimension,
  NotASymmetry,
  NotEquivariant,
  LengthMismatch,
  MissingLabels,
  MalformedInput,
  SolveFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace projnorm
