#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rite/segmentation.h"

namespace rite {

/// Hand-annotated section boundaries in measures.
struct ReferenceSection {
  std::string label;
  int start_measure = 0;
  int end_measure = 0;
};

struct ReferenceAnnotation {
  std::vector<ReferenceSection> sections;

  /// "label start_measure end_measure" per line, '#' comments. Sections must
  /// be contiguous (each starts one measure after the previous one ends).
  static ReferenceAnnotation parse(std::istream& in);
  static ReferenceAnnotation load(const std::string& path);
};

/// Measure number -> beat position of its downbeat.
struct MeasureMap {
  std::vector<std::pair<int, double>> entries;  // strictly increasing in both

  /// "measure start_beats" per line, '#' comments.
  static MeasureMap parse(std::istream& in);
  static MeasureMap load(const std::string& path);

  std::optional<double> start_beats(int measure) const;
};

struct AgreementSummary {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t reference = 0;
  long long count_difference = 0;  // predicted - reference
};

/// One-to-one boundary matching within +-tol_beats. Both lists are sorted
/// internally, so input order is irrelevant.
AgreementSummary compare_boundaries(std::vector<double> predicted_beats, std::vector<double> reference_beats,
                                    double tol_beats);

/// Section start beats; Error(UncoveredMeasure) if the map misses a measure.
std::vector<double> reference_boundaries(const ReferenceAnnotation& annotation, const MeasureMap& measure_map);

AgreementSummary compare_to_reference(std::span<const MelodySegment> segments, const ReferenceAnnotation& annotation,
                                      const MeasureMap& measure_map, double tol_beats);

}  // namespace rite
