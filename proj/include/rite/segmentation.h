#pragma once

#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "rite/ingest.h"
#include "rite/tonality.h"

namespace rite {

inline constexpr int kDefaultMelodyChannel = 5;
inline constexpr int kDefaultSecondaryChannel = 4;

/// A contiguous run of melody notes and its tonal label.
struct MelodySegment {
  double start_sec = 0.0;
  double end_sec = 0.0;
  double start_beats = 0.0;
  double end_beats = 0.0;
  std::vector<NoteEvent> notes;
  std::vector<CandidatePair> candidates;  // scored, canonical order
  std::optional<CandidatePair> chosen;    // absent => "notknownmode"
  std::optional<PitchClass> tonic;        // set whenever a tonal centre was estimated

  std::string_view mode_label() const { return chosen ? std::string_view(chosen->mode) : kUnknownMode; }
};

/// Builds a segment over `notes` with timing filled in and no label.
MelodySegment make_segment(std::span<const NoteEvent> notes);

/// Notes on `channel`, in table order. Channel must be 0..15.
std::vector<NoteEvent> extract_channel_melody(const NoteTable& table, int channel);

/// Splits wherever the silence between one note's end and the next onset
/// exceeds `threshold_sec`. Segments are unlabelled.
std::vector<MelodySegment> segment_by_gaps(std::span<const NoteEvent> melody, double threshold_sec);

/// Greedy left-to-right growth: a segment keeps absorbing notes while at least
/// one (tonic, mode) pair still covers its pitch classes. The note that would
/// leave no candidate starts the next segment. Segments come back labelled by
/// profile scoring.
std::vector<MelodySegment> segment_by_feasibility(std::span<const NoteEvent> melody,
                                                  const ModeCatalog& catalog = ModeCatalog::builtin());

/// Profile-based labelling: all feasible candidates scored, best one chosen.
void label_by_profiles(MelodySegment& segment, const ModeCatalog& catalog = ModeCatalog::builtin());

enum class TonicStrategy { MostPlayed, MostFrequent };

/// Fixed-tonic labelling: estimate the tonal centre first, then pick a mode
/// that contains every pitch class at that tonic.
void label_with_fixed_tonic(MelodySegment& segment, TonicStrategy strategy, ModeSelection selection,
                            std::mt19937_64* rng = nullptr, const ModeCatalog& catalog = ModeCatalog::builtin());

/// Maximal cross-channel window of overlapping notes.
struct SimultaneityBlock {
  double start_sec = 0.0;
  double end_sec = 0.0;
  std::map<int, std::vector<NoteEvent>> notes_by_channel;

  std::size_t note_count() const;
};

/// Connected components of the graph linking notes on different channels
/// whose [onset, offset) intervals overlap by more than `overlap_eps` seconds.
/// Components touching fewer than two channels are dropped; components whose
/// windows overlap are merged, so blocks come back disjoint and time-ordered.
std::vector<SimultaneityBlock> simultaneity_blocks(const NoteTable& table, double overlap_eps = 0.0);

}  // namespace rite
