#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rite/segmentation.h"
#include "rite/tonality.h"

namespace rite {

struct ChordTemplate {
  std::string label;
  std::vector<int> intervals;  // semitones above the fundamental, 0 implied

  PitchClassSet pitch_set(PitchClass root) const;
  bool operator==(const ChordTemplate&) const = default;
};

/// Interval and chord templates. Matching prefers the template with the fewest
/// intervals, then the bass as root, then the earliest catalog position, then
/// the lowest root.
class ChordCatalog {
 public:
  ChordCatalog() = default;
  explicit ChordCatalog(std::vector<ChordTemplate> templates);

  /// Eleven dyads, four triads, four sevenths and the 9th/11th/13th stack.
  static const ChordCatalog& builtin();

  /// One template per line: "<label> <interval> <interval> ...". '#' comments.
  static ChordCatalog parse(std::istream& in);
  static ChordCatalog load(const std::string& path);
  std::string format() const;

  std::span<const ChordTemplate> templates() const { return templates_; }
  /// Indices into templates(), most specific (largest) first. Stable within a size.
  std::span<const std::size_t> specificity_order() const { return order_; }

  bool operator==(const ChordCatalog& other) const { return templates_ == other.templates_; }

 private:
  std::vector<ChordTemplate> templates_;
  std::vector<std::size_t> order_;
};

struct ChordLabel {
  PitchClass fundamental;
  std::string label;

  bool operator==(const ChordLabel&) const = default;
};

/// Names a pitch-class set (at least two members). Every member is tried as the
/// fundamental; nullopt when no template contains the set under any of them.
/// Among equally small templates, `bass` (the lowest sounding note) is preferred
/// as the fundamental when given.
std::optional<ChordLabel> chord_label(PitchClassSet pitches, const ChordCatalog& catalog = ChordCatalog::builtin(),
                                      std::optional<PitchClass> bass = std::nullopt);

struct ChordEvent {
  PitchClass fundamental;
  std::string label;
  double onset_sec = 0.0;
  int channel = 0;

  bool operator==(const ChordEvent&) const = default;
};

struct HarmonyResult {
  std::vector<ChordEvent> events;  // ordered by (onset_sec, channel)
  std::size_t no_match = 0;        // groups with no template
};

/// Onset instants are compared after rounding to this resolution.
inline constexpr double kOnsetResolutionSec = 1e-4;

/// Per block and per channel, groups notes that start at the same instant and
/// labels every group holding two or more distinct pitch classes, with the
/// group's lowest note offered as the fundamental.
HarmonyResult analyze_blocks_harmony(std::span<const SimultaneityBlock> blocks,
                                     const ChordCatalog& catalog = ChordCatalog::builtin());

}  // namespace rite
