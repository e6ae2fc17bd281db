#include "rite/error.h"

namespace rite {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFormat:
      return "UnsupportedFormat";
    case ErrorCode::CorruptFile:
      return "CorruptFile";
    case ErrorCode::BadColumnCount:
      return "BadColumnCount";
    case ErrorCode::NonNumericField:
      return "NonNumericField";
    case ErrorCode::NegativeDuration:
      return "NegativeDuration";
    case ErrorCode::FieldOutOfRange:
      return "FieldOutOfRange";
    case ErrorCode::IoFailure:
      return "IoFailure";
    case ErrorCode::OutOfRange:
      return "OutOfRange";
    case ErrorCode::NotInScale:
      return "NotInScale";
    case ErrorCode::EmptyMelody:
      return "EmptyMelody";
    case ErrorCode::EmptyCandidates:
      return "EmptyCandidates";
    case ErrorCode::NonPositiveThreshold:
      return "NonPositiveThreshold";
    case ErrorCode::NoMatch:
      return "NoMatch";
    case ErrorCode::NonPositiveDuration:
      return "NonPositiveDuration";
    case ErrorCode::InvalidCatalog:
      return "InvalidCatalog";
    case ErrorCode::InvalidAnnotation:
      return "InvalidAnnotation";
    case ErrorCode::UncoveredMeasure:
      return "UncoveredMeasure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace rite
