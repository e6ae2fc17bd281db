#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rite {

enum class ErrorCode {
  // ingest
  UnsupportedFormat,
  CorruptFile,
  BadColumnCount,
  NonNumericField,
  NegativeDuration,
  FieldOutOfRange,
  IoFailure,
  // tonality / segmentation
  OutOfRange,
  NotInScale,
  EmptyMelody,
  EmptyCandidates,
  NonPositiveThreshold,
  // harmony / rhythm
  NoMatch,
  NonPositiveDuration,
  // catalogs and reference files
  InvalidCatalog,
  InvalidAnnotation,
  UncoveredMeasure,
};

std::string_view to_string(ErrorCode code);

/// Input-level failure. Anything the caller could fix by supplying different
/// data is reported through this type; programming errors use std::logic_error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rite
