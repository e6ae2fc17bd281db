#include "rite/tonality.h"

#include <algorithm>
#include <array>
#include <bit>

#include "rite/error.h"

namespace rite {

namespace {

constexpr std::array<std::string_view, kPitchClasses> kNames = {
    "C/B#", "C#/Db", "D", "D#/Eb", "E/Fb", "F/E#", "F#/Gb", "G", "G#/Ab", "A", "A#/Bb", "B/Cb"};

void check_midi(int midi) {
  if (midi < 0 || midi > 127) throw Error(ErrorCode::OutOfRange, "MIDI pitch " + std::to_string(midi));
}

void require_notes(std::span<const NoteEvent> notes) {
  if (notes.empty()) throw Error(ErrorCode::EmptyMelody, "melody has no notes");
}

}  // namespace

std::string_view PitchClass::name() const { return kNames[static_cast<std::size_t>(index_)]; }

std::string_view pitch_class_name(int index) { return PitchClass::wrap(index).name(); }

PitchClass pitch_class(int midi) {
  check_midi(midi);
  return PitchClass::wrap(midi);
}

int fold_to_octave2(int midi) {
  check_midi(midi);
  return 24 + midi % kPitchClasses;
}

PitchClassSet::PitchClassSet(std::initializer_list<int> classes) {
  for (int pc : classes) insert(pc);
}

PitchClassSet PitchClassSet::of_notes(std::span<const NoteEvent> notes) {
  PitchClassSet set;
  for (const auto& n : notes) set.insert(n.pitch);
  return set;
}

int PitchClassSet::size() const { return std::popcount(mask_); }

PitchClassSet PitchClassSet::shifted(int semitones) const {
  const int k = PitchClass::wrap(semitones).index();
  const unsigned m = mask_;
  return PitchClassSet(static_cast<std::uint16_t>(((m << k) | (m >> (kPitchClasses - k))) & 0x0FFF));
}

std::vector<int> PitchClassSet::members() const {
  std::vector<int> out;
  for (int pc = 0; pc < kPitchClasses; ++pc) {
    if (contains(pc)) out.push_back(pc);
  }
  return out;
}

PitchClassSet mode_pitch_set(const Mode& mode, PitchClass tonic) {
  PitchClassSet set;
  set.insert(tonic.index());
  for (int d : mode.intervals) set.insert(tonic.index() + d);
  return set;
}

bool is_feasible(PitchClassSet pitches, PitchClass tonic, const Mode& mode) {
  return pitches.subset_of(mode_pitch_set(mode, tonic));
}

std::vector<CandidatePair> enumerate_candidates(PitchClassSet pitches, const ModeCatalog& catalog) {
  if (pitches.empty()) throw Error(ErrorCode::EmptyMelody, "no pitch classes to test");
  std::vector<CandidatePair> out;
  for (int t = 0; t < kPitchClasses; ++t) {
    const PitchClass tonic = PitchClass::wrap(t);
    for (std::size_t m = 0; m < catalog.size(); ++m) {
      const Mode& mode = catalog.at(m);
      if (is_feasible(pitches, tonic, mode)) out.push_back({tonic, m, mode.name, 0});
    }
  }
  return out;
}

int degree_of(int pc, PitchClass tonic, const Mode& mode) {
  const int offset = PitchClass::wrap(pc - tonic.index()).index();
  if (offset == 0) return 1;
  auto it = std::find(mode.intervals.begin(), mode.intervals.end(), offset);
  if (it == mode.intervals.end()) {
    throw Error(ErrorCode::NotInScale, std::string(pitch_class_name(pc)) + " not in " +
                                           std::string(tonic.name()) + " " + mode.name);
  }
  return static_cast<int>(it - mode.intervals.begin()) + 2;
}

int profile_score(std::span<const NoteEvent> notes, PitchClass tonic, const Mode& mode) {
  int score = 0;
  for (const auto& n : notes) {
    score += mode.degree_weights.at(static_cast<std::size_t>(degree_of(n.pitch, tonic, mode) - 1));
  }
  return score;
}

CandidateSelection select_best_candidate(std::span<const NoteEvent> notes, std::vector<CandidatePair> candidates,
                                         const ModeCatalog& catalog) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidate pairs to score");
  for (auto& c : candidates) c.score = profile_score(notes, c.tonic, catalog.at(c.mode_index));

  // Tonics are ranked by their distance above the first note rather than by
  // absolute index, so that transposing the melody transposes the choice.
  const int reference = notes.empty() ? 0 : PitchClass::wrap(notes.front().pitch).index();
  auto canonical_less = [reference](const CandidatePair& a, const CandidatePair& b) {
    const int da = PitchClass::wrap(a.tonic.index() - reference).index();
    const int db = PitchClass::wrap(b.tonic.index() - reference).index();
    return std::pair(da, a.mode_index) < std::pair(db, b.mode_index);
  };
  const CandidatePair* best = &candidates.front();
  for (const auto& c : candidates) {
    if (c.score > best->score || (c.score == best->score && canonical_less(c, *best))) best = &c;
  }
  return {*best, std::move(candidates)};
}

namespace {

template <typename Accumulate>
PitchClass argmax_pitch_class(std::span<const NoteEvent> notes, Accumulate weight) {
  require_notes(notes);
  std::array<double, kPitchClasses> totals{};
  for (const auto& n : notes) totals[static_cast<std::size_t>(PitchClass::wrap(n.pitch).index())] += weight(n);
  // max_element returns the first maximum, i.e. the lowest index on ties.
  const auto it = std::max_element(totals.begin(), totals.end());
  return PitchClass::wrap(static_cast<int>(it - totals.begin()));
}

}  // namespace

PitchClass tonal_centre_most_played(std::span<const NoteEvent> notes) {
  return argmax_pitch_class(notes, [](const NoteEvent&) { return 1.0; });
}

PitchClass tonal_centre_most_frequent(std::span<const NoteEvent> notes) {
  return argmax_pitch_class(notes, [](const NoteEvent& n) { return n.duration_sec; });
}

std::optional<std::size_t> classify_scale_fixed_tonic(std::span<const NoteEvent> notes, PitchClass tonic,
                                                      ModeSelection selection, std::mt19937_64* rng,
                                                      const ModeCatalog& catalog) {
  require_notes(notes);
  const PitchClassSet pitches = PitchClassSet::of_notes(notes);
  std::vector<std::size_t> feasible;
  for (std::size_t m = 0; m < catalog.size(); ++m) {
    if (is_feasible(pitches, tonic, catalog.at(m))) feasible.push_back(m);
  }
  if (feasible.empty()) return std::nullopt;
  if (selection == ModeSelection::First) return feasible.front();

  if (rng == nullptr) throw std::logic_error("seeded-random selection without a generator");
  // Raw engine output keeps the pick identical across standard libraries.
  return feasible[static_cast<std::size_t>((*rng)() % feasible.size())];
}

}  // namespace rite
