#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rite/ingest.h"

namespace rite {

inline constexpr int kPitchClasses = 12;

/// Pitch class 0..11 with C = 0. Names are fixed enharmonic pairs.
class PitchClass {
 public:
  constexpr PitchClass() = default;
  /// Wraps any integer into 0..11.
  static constexpr PitchClass wrap(int value) {
    return PitchClass(((value % kPitchClasses) + kPitchClasses) % kPitchClasses);
  }

  constexpr int index() const { return index_; }
  std::string_view name() const;
  constexpr PitchClass shifted(int semitones) const { return wrap(index_ + semitones); }

  constexpr auto operator<=>(const PitchClass&) const = default;

 private:
  constexpr explicit PitchClass(int index) : index_(index) {}
  int index_ = 0;
};

std::string_view pitch_class_name(int index);

/// midi in 0..127, else Error(OutOfRange).
PitchClass pitch_class(int midi);
/// 24 + midi % 12: the same note inside MIDI octave 2.
int fold_to_octave2(int midi);

/// Set of pitch classes as a 12-bit mask.
class PitchClassSet {
 public:
  constexpr PitchClassSet() = default;
  constexpr explicit PitchClassSet(std::uint16_t mask) : mask_(mask & 0x0FFF) {}
  PitchClassSet(std::initializer_list<int> classes);

  static PitchClassSet of_notes(std::span<const NoteEvent> notes);

  constexpr void insert(int pc) { mask_ |= static_cast<std::uint16_t>(1u << PitchClass::wrap(pc).index()); }
  constexpr bool contains(int pc) const { return (mask_ >> PitchClass::wrap(pc).index()) & 1u; }
  constexpr bool subset_of(PitchClassSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool empty() const { return mask_ == 0; }
  int size() const;
  constexpr std::uint16_t mask() const { return mask_; }

  /// Transposes every member by `semitones` (mod 12).
  PitchClassSet shifted(int semitones) const;
  std::vector<int> members() const;

  constexpr bool operator==(const PitchClassSet&) const = default;

 private:
  std::uint16_t mask_ = 0;
};

/// A named scale: semitone offsets above the tonic plus one profile weight per
/// scale degree (degree_weights[0] is degree I, the tonic).
struct Mode {
  std::string name;
  std::vector<int> intervals;
  std::vector<int> degree_weights;

  int degree_count() const { return static_cast<int>(intervals.size()) + 1; }
  bool operator==(const Mode&) const = default;
};

/// Ordered list of modes. Catalog order is the canonical mode order used for
/// candidate enumeration and tie-breaking.
class ModeCatalog {
 public:
  ModeCatalog() = default;
  explicit ModeCatalog(std::vector<Mode> modes);

  /// Eleven modes: seven diatonic modes plus a separate "minor" entry,
  /// whole-tone and the two octatonic orderings.
  static const ModeCatalog& builtin();

  static ModeCatalog parse(std::istream& in);
  static ModeCatalog load(const std::string& path);
  /// Inverse of parse(); degrees are listed as roman numerals grouped by weight.
  std::string format() const;

  std::span<const Mode> modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  const Mode& at(std::size_t index) const { return modes_.at(index); }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const ModeCatalog&) const = default;

 private:
  std::vector<Mode> modes_;
};

/// Label used when no mode fits a note set.
inline constexpr std::string_view kUnknownMode = "notknownmode";

struct CandidatePair {
  PitchClass tonic;
  std::size_t mode_index = 0;  // position in the catalog
  std::string mode;
  int score = 0;

  bool operator==(const CandidatePair&) const = default;
};

std::string roman_numeral(int degree);

PitchClassSet mode_pitch_set(const Mode& mode, PitchClass tonic);
bool is_feasible(PitchClassSet pitches, PitchClass tonic, const Mode& mode);

/// Every feasible (tonic, mode) pair, tonic ascending then catalog order.
/// Scores are left at zero.
std::vector<CandidatePair> enumerate_candidates(PitchClassSet pitches,
                                                const ModeCatalog& catalog = ModeCatalog::builtin());

/// 1-based scale degree of `pc`, Error(NotInScale) when pc is outside the mode.
int degree_of(int pc, PitchClass tonic, const Mode& mode);

/// Sum of degree weights, one addend per note occurrence.
int profile_score(std::span<const NoteEvent> notes, PitchClass tonic, const Mode& mode);

struct CandidateSelection {
  CandidatePair best;
  std::vector<CandidatePair> scored;  // input order, scores filled in
};

/// Scores every candidate and returns the highest. Ties go to the tonic closest
/// above the first note's pitch class (the first note itself first), then to
/// the earlier catalog entry.
CandidateSelection select_best_candidate(std::span<const NoteEvent> notes,
                                         std::vector<CandidatePair> candidates,
                                         const ModeCatalog& catalog = ModeCatalog::builtin());

/// Pitch class with the most note occurrences; ties to the lowest index.
PitchClass tonal_centre_most_played(std::span<const NoteEvent> notes);
/// Pitch class with the largest summed duration_sec; ties to the lowest index.
PitchClass tonal_centre_most_frequent(std::span<const NoteEvent> notes);

enum class ModeSelection { First, SeededRandom };

/// Picks a mode at a fixed tonic among the feasible ones. Returns the catalog
/// index, or nullopt when nothing is feasible ("notknownmode").
/// `rng` is only consumed under ModeSelection::SeededRandom.
std::optional<std::size_t> classify_scale_fixed_tonic(std::span<const NoteEvent> notes, PitchClass tonic,
                                                      ModeSelection selection, std::mt19937_64* rng = nullptr,
                                                      const ModeCatalog& catalog = ModeCatalog::builtin());

}  // namespace rite
