#include <random>

#include "rite/analysis.h"

namespace rite {

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Profiles:
      return "profiles";
    case Method::MostPlayed:
      return "most-played";
    case Method::MostFrequent:
      return "most-frequent";
  }
  return "profiles";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::Profiles, Method::MostPlayed, Method::MostFrequent}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

MelodicAnalysis analyze_melody(const NoteTable& table, int channel, const AnalysisOptions& options) {
  const ModeCatalog& catalog = *options.modes;
  MelodicAnalysis result;
  result.channel = channel;
  result.method = options.method;
  result.segmentation = options.gap_threshold_sec ? "gaps" : "feasibility";

  const auto melody = extract_channel_melody(table, channel);
  if (melody.empty()) return result;

  result.segments = options.gap_threshold_sec ? segment_by_gaps(melody, *options.gap_threshold_sec)
                                              : segment_by_feasibility(melody, catalog);

  std::mt19937_64 rng(options.seed.value_or(0));
  const ModeSelection selection = options.seed ? ModeSelection::SeededRandom : ModeSelection::First;
  for (auto& seg : result.segments) {
    switch (options.method) {
      case Method::Profiles:
        if (options.gap_threshold_sec) label_by_profiles(seg, catalog);
        break;
      case Method::MostPlayed:
        label_with_fixed_tonic(seg, TonicStrategy::MostPlayed, selection, &rng, catalog);
        break;
      case Method::MostFrequent:
        label_with_fixed_tonic(seg, TonicStrategy::MostFrequent, selection, &rng, catalog);
        break;
    }
  }
  check_invariants(result, melody, catalog);
  return result;
}

AnalysisReport analyze(const NoteTable& table, const AnalysisOptions& options) {
  AnalysisReport report;
  report.source = table.source;
  report.diagnostics.dangling_notes = table.diagnostics.dangling_notes;
  report.diagnostics.zero_length_notes = table.diagnostics.zero_length_notes;
  report.diagnostics.stray_note_offs = table.diagnostics.stray_note_offs;

  report.melodic.push_back(analyze_melody(table, options.melody_channel, options));
  if (options.secondary_channel && *options.secondary_channel != options.melody_channel) {
    report.melodic.push_back(analyze_melody(table, *options.secondary_channel, options));
  }

  const auto blocks = simultaneity_blocks(table, options.overlap_eps);
  check_invariants(blocks);
  report.diagnostics.simultaneity_blocks = blocks.size();

  auto harmony = analyze_blocks_harmony(blocks, *options.chords);
  report.harmonic = std::move(harmony.events);
  report.diagnostics.no_match_chords = harmony.no_match;

  auto rhythm = polyrhythm_report(blocks, options.rel_tol);
  report.rhythmic = std::move(rhythm.patterns);
  report.diagnostics.inexact_figures = rhythm.inexact_figures;
  report.diagnostics.clipped_notes = rhythm.clipped_notes;
  return report;
}

void check_invariants(const MelodicAnalysis& analysis, std::span<const NoteEvent> melody, const ModeCatalog& catalog) {
  std::size_t cursor = 0;
  const bool greedy = analysis.segmentation == "feasibility";
  for (std::size_t k = 0; k < analysis.segments.size(); ++k) {
    const auto& seg = analysis.segments[k];
    if (seg.notes.empty()) throw InvariantViolation("empty melody segment");
    for (const auto& n : seg.notes) {
      if (cursor >= melody.size() || !(n == melody[cursor])) {
        throw InvariantViolation("segments do not partition the melody");
      }
      ++cursor;
    }
    if (seg.chosen) {
      const auto& mode = catalog.at(seg.chosen->mode_index);
      if (!is_feasible(PitchClassSet::of_notes(seg.notes), seg.chosen->tonic, mode)) {
        throw InvariantViolation("segment labelled with an infeasible (tonic, mode) pair");
      }
      if (greedy && k + 1 < analysis.segments.size()) {
        PitchClassSet extended = PitchClassSet::of_notes(seg.notes);
        extended.insert(analysis.segments[k + 1].notes.front().pitch);
        if (!enumerate_candidates(extended, catalog).empty()) {
          throw InvariantViolation("feasibility segment could have absorbed the next note");
        }
      }
    }
  }
  if (cursor != melody.size()) throw InvariantViolation("segments do not cover the melody");
}

void check_invariants(std::span<const SimultaneityBlock> blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].notes_by_channel.size() < 2) throw InvariantViolation("block with fewer than two channels");
    if (i > 0 && blocks[i].start_sec < blocks[i - 1].end_sec) throw InvariantViolation("overlapping blocks");
  }
}

}  // namespace rite
