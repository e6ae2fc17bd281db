#include "rite/reference.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "rite/error.h"

namespace rite {

namespace {

template <typename Handler>
void for_each_record(std::istream& in, Handler&& handle) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    handle(fields, line_no);
  }
}

[[noreturn]] void annotation_error(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::InvalidAnnotation, "line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

ReferenceAnnotation ReferenceAnnotation::parse(std::istream& in) {
  ReferenceAnnotation out;
  for_each_record(in, [&](std::istringstream& fields, std::size_t line_no) {
    ReferenceSection s;
    std::string extra;
    if (!(fields >> s.label >> s.start_measure >> s.end_measure) || (fields >> extra)) {
      annotation_error(line_no, "expected 'label start_measure end_measure'");
    }
    if (s.start_measure < 1 || s.end_measure < s.start_measure) annotation_error(line_no, "bad measure range");
    if (!out.sections.empty() && s.start_measure != out.sections.back().end_measure + 1) {
      annotation_error(line_no, "section does not start right after the previous one");
    }
    out.sections.push_back(std::move(s));
  });
  return out;
}

ReferenceAnnotation ReferenceAnnotation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return parse(in);
}

MeasureMap MeasureMap::parse(std::istream& in) {
  MeasureMap out;
  for_each_record(in, [&](std::istringstream& fields, std::size_t line_no) {
    int measure = 0;
    double beats = 0.0;
    std::string extra;
    if (!(fields >> measure >> beats) || (fields >> extra)) annotation_error(line_no, "expected 'measure start_beats'");
    if (!out.entries.empty() && (measure <= out.entries.back().first || beats <= out.entries.back().second)) {
      annotation_error(line_no, "measure map must increase strictly");
    }
    out.entries.emplace_back(measure, beats);
  });
  return out;
}

MeasureMap MeasureMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return parse(in);
}

std::optional<double> MeasureMap::start_beats(int measure) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), measure,
                             [](const auto& e, int m) { return e.first < m; });
  if (it == entries.end() || it->first != measure) return std::nullopt;
  return it->second;
}

AgreementSummary compare_boundaries(std::vector<double> predicted, std::vector<double> reference, double tol_beats) {
  if (tol_beats < 0.0) throw Error(ErrorCode::OutOfRange, "tolerance must be >= 0");
  std::sort(predicted.begin(), predicted.end());
  std::sort(reference.begin(), reference.end());

  // Greedy sweep over both sorted lists; with equal-width windows this yields
  // a maximum one-to-one matching.
  std::size_t matched = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < reference.size() && j < predicted.size()) {
    if (predicted[j] < reference[i] - tol_beats) {
      ++j;
    } else if (predicted[j] > reference[i] + tol_beats) {
      ++i;
    } else {
      ++matched;
      ++i;
      ++j;
    }
  }

  AgreementSummary s;
  s.matched = matched;
  s.predicted = predicted.size();
  s.reference = reference.size();
  s.count_difference = static_cast<long long>(predicted.size()) - static_cast<long long>(reference.size());
  s.precision = predicted.empty() ? 0.0 : static_cast<double>(matched) / static_cast<double>(predicted.size());
  s.recall = reference.empty() ? 0.0 : static_cast<double>(matched) / static_cast<double>(reference.size());
  s.f1 = (s.precision + s.recall) > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

std::vector<double> reference_boundaries(const ReferenceAnnotation& annotation, const MeasureMap& measure_map) {
  std::vector<double> out;
  for (const auto& section : annotation.sections) {
    const auto beats = measure_map.start_beats(section.start_measure);
    if (!beats) {
      throw Error(ErrorCode::UncoveredMeasure, "measure " + std::to_string(section.start_measure) + " (section " +
                                                   section.label + ") missing from measure map");
    }
    out.push_back(*beats);
  }
  if (!annotation.sections.empty() &&
      (measure_map.entries.empty() || measure_map.entries.back().first < annotation.sections.back().end_measure)) {
    throw Error(ErrorCode::UncoveredMeasure,
                "measure map ends before measure " + std::to_string(annotation.sections.back().end_measure));
  }
  return out;
}

AgreementSummary compare_to_reference(std::span<const MelodySegment> segments, const ReferenceAnnotation& annotation,
                                      const MeasureMap& measure_map, double tol_beats) {
  std::vector<double> predicted;
  predicted.reserve(segments.size());
  for (const auto& seg : segments) predicted.push_back(seg.start_beats);
  return compare_boundaries(std::move(predicted), reference_boundaries(annotation, measure_map), tol_beats);
}

}  // namespace rite
