#include "isokin/error.hpp"

namespace isokin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::UnitMismatch: return "UnitMismatch";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::CentroidMismatch: return "CentroidMismatch";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InvalidOrdering: return "InvalidOrdering";
    case ErrorCode::DegenerateLink: return "DegenerateLink";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NonpositiveLength: return "NonpositiveLength";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAModelSet: return "NotAModelSet";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NonpositiveAlignment: return "NonpositiveAlignment";
    case ErrorCode::NoValidPosture: return "NoValidPosture";
    case ErrorCode::NothingToRender: return "NothingToRender";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound:
    case ErrorCode::IoError:
      return 1;
    case ErrorCode::SingularMatrix:
    case ErrorCode::NotIsotropic:
    case ErrorCode::DegenerateConfiguration:
    case ErrorCode::NonpositiveAlignment:
    case ErrorCode::NoValidPosture:
    case ErrorCode::DegenerateLink:
      return 3;
    default:
      return 2;
  }
}

}  // namespace isokin
