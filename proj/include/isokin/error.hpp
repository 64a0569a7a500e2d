#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isokin {

enum class ErrorCode {
  EmptySet,
  NonFinite,
  UnitMismatch,
  DegeneratePolygon,
  CentroidMismatch,
  TooFewPoints,
  InvalidOrdering,
  DegenerateLink,
  EnumerationTooLarge,
  ArityMismatch,
  NonpositiveLength,
  ShapeMismatch,
  NotAModelSet,
  NotIsotropic,
  SingularMatrix,
  DegenerateConfiguration,
  NonpositiveAlignment,
  NoValidPosture,
  NothingToRender,
  InvalidArgument,
  ParseError,
  UnsupportedVersion,
  FileNotFound,
  IoError,
};

/// Stable name used in error JSON and messages.
std::string_view to_string(ErrorCode code);

/// Process exit code contract: 1 I/O, 2 validation, 3 numeric/domain.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace isokin
