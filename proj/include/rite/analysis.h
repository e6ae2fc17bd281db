#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rite/harmony.h"
#include "rite/ingest.h"
#include "rite/rhythm.h"
#include "rite/segmentation.h"
#include "rite/tonality.h"

namespace rite {

enum class Method { Profiles, MostPlayed, MostFrequent };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

struct AnalysisOptions {
  int melody_channel = kDefaultMelodyChannel;
  std::optional<int> secondary_channel = kDefaultSecondaryChannel;
  Method method = Method::Profiles;
  std::optional<double> gap_threshold_sec;  // set => gap segmentation instead of feasibility
  double rel_tol = kDefaultRelTol;
  std::optional<std::uint64_t> seed;  // set => fixed-tonic methods pick modes at random
  double overlap_eps = 0.0;
  const ModeCatalog* modes = &ModeCatalog::builtin();
  const ChordCatalog* chords = &ChordCatalog::builtin();
};

struct MelodicAnalysis {
  int channel = kDefaultMelodyChannel;
  Method method = Method::Profiles;
  std::string segmentation;  // "feasibility" or "gaps"
  std::vector<MelodySegment> segments;
};

struct Diagnostics {
  std::size_t dangling_notes = 0;
  std::size_t zero_length_notes = 0;
  std::size_t stray_note_offs = 0;
  std::size_t no_match_chords = 0;
  std::size_t inexact_figures = 0;
  std::size_t clipped_notes = 0;
  std::size_t simultaneity_blocks = 0;
};

struct AnalysisReport {
  std::string source;
  std::vector<MelodicAnalysis> melodic;
  std::vector<ChordEvent> harmonic;
  std::vector<RhythmPattern> rhythmic;
  Diagnostics diagnostics;
};

/// Raised when a result breaks one of the structural guarantees the analysis
/// promises (partition, feasibility, block ordering). Indicates a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Full melodic, harmonic and rhythmic pass over one table.
AnalysisReport analyze(const NoteTable& table, const AnalysisOptions& options = {});

/// Melodic pass for a single channel.
MelodicAnalysis analyze_melody(const NoteTable& table, int channel, const AnalysisOptions& options);

/// Throws InvariantViolation on the first broken guarantee.
void check_invariants(const MelodicAnalysis& analysis, std::span<const NoteEvent> melody, const ModeCatalog& catalog);
void check_invariants(std::span<const SimultaneityBlock> blocks);

}  // namespace rite
