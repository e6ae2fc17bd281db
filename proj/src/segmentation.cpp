#include "rite/segmentation.h"

#include <algorithm>
#include <numeric>

#include "rite/error.h"

namespace rite {

MelodySegment make_segment(std::span<const NoteEvent> notes) {
  if (notes.empty()) throw std::logic_error("segment over an empty note range");
  MelodySegment seg;
  seg.notes.assign(notes.begin(), notes.end());
  seg.start_sec = notes.front().onset_sec;
  seg.start_beats = notes.front().onset_beats;
  for (const auto& n : notes) {
    seg.end_sec = std::max(seg.end_sec, n.offset_sec());
    seg.end_beats = std::max(seg.end_beats, n.offset_beats());
  }
  return seg;
}

std::vector<NoteEvent> extract_channel_melody(const NoteTable& table, int channel) {
  if (channel < 0 || channel > 15) throw Error(ErrorCode::OutOfRange, "MIDI channel " + std::to_string(channel));
  std::vector<NoteEvent> out;
  std::copy_if(table.events.begin(), table.events.end(), std::back_inserter(out),
               [channel](const NoteEvent& e) { return e.channel == channel; });
  sort_events(out);
  return out;
}

std::vector<MelodySegment> segment_by_gaps(std::span<const NoteEvent> melody, double threshold_sec) {
  if (!(threshold_sec > 0.0)) {
    throw Error(ErrorCode::NonPositiveThreshold, "gap threshold must be > 0, got " + std::to_string(threshold_sec));
  }
  std::vector<MelodySegment> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= melody.size(); ++i) {
    if (i == melody.size() || melody[i].onset_sec - melody[i - 1].offset_sec() > threshold_sec) {
      out.push_back(make_segment(melody.subspan(begin, i - begin)));
      begin = i;
    }
  }
  return out;
}

void label_by_profiles(MelodySegment& segment, const ModeCatalog& catalog) {
  auto candidates = enumerate_candidates(PitchClassSet::of_notes(segment.notes), catalog);
  segment.chosen.reset();
  segment.tonic.reset();
  segment.candidates.clear();
  if (candidates.empty()) return;
  auto selection = select_best_candidate(segment.notes, std::move(candidates), catalog);
  segment.candidates = std::move(selection.scored);
  segment.chosen = selection.best;
  segment.tonic = selection.best.tonic;
}

void label_with_fixed_tonic(MelodySegment& segment, TonicStrategy strategy, ModeSelection selection,
                            std::mt19937_64* rng, const ModeCatalog& catalog) {
  const PitchClass tonic = strategy == TonicStrategy::MostPlayed ? tonal_centre_most_played(segment.notes)
                                                                 : tonal_centre_most_frequent(segment.notes);
  segment.tonic = tonic;
  segment.candidates.clear();
  segment.chosen.reset();
  if (auto mode = classify_scale_fixed_tonic(segment.notes, tonic, selection, rng, catalog)) {
    const Mode& m = catalog.at(*mode);
    segment.chosen = CandidatePair{tonic, *mode, m.name, profile_score(segment.notes, tonic, m)};
  }
}

std::vector<MelodySegment> segment_by_feasibility(std::span<const NoteEvent> melody, const ModeCatalog& catalog) {
  if (melody.empty()) throw Error(ErrorCode::EmptyMelody, "melody has no notes");

  auto has_candidates = [&](PitchClassSet set) {
    for (int t = 0; t < kPitchClasses; ++t) {
      for (const auto& mode : catalog.modes()) {
        if (is_feasible(set, PitchClass::wrap(t), mode)) return true;
      }
    }
    return false;
  };
  auto pair_set = [&](std::size_t i) {
    PitchClassSet s;
    s.insert(melody[i].pitch);
    if (i + 1 < melody.size()) s.insert(melody[i + 1].pitch);
    return s;
  };

  std::vector<MelodySegment> out;
  std::size_t begin = 0;
  while (begin < melody.size()) {
    if (!has_candidates(pair_set(begin))) {
      // Degenerate seed: absorb notes until a two-note window starting at the
      // next note is feasible again.
      std::size_t end = begin + 1;
      while (end < melody.size() && !has_candidates(pair_set(end))) ++end;
      MelodySegment seg = make_segment(melody.subspan(begin, end - begin));
      out.push_back(std::move(seg));
      begin = end;
      continue;
    }

    std::size_t end = std::min(begin + 2, melody.size());
    PitchClassSet set = pair_set(begin);
    while (end < melody.size()) {
      PitchClassSet grown = set;
      grown.insert(melody[end].pitch);
      if (!has_candidates(grown)) break;
      set = grown;
      ++end;
    }
    MelodySegment seg = make_segment(melody.subspan(begin, end - begin));
    label_by_profiles(seg, catalog);
    out.push_back(std::move(seg));
    begin = end;
  }
  return out;
}

std::size_t SimultaneityBlock::note_count() const {
  return std::accumulate(notes_by_channel.begin(), notes_by_channel.end(), std::size_t{0},
                         [](std::size_t acc, const auto& kv) { return acc + kv.second.size(); });
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<SimultaneityBlock> simultaneity_blocks(const NoteTable& table, double overlap_eps) {
  if (overlap_eps < 0.0) throw Error(ErrorCode::OutOfRange, "overlap epsilon must be >= 0");

  std::vector<NoteEvent> notes = table.events;
  sort_events(notes);
  const std::size_t n = notes.size();
  DisjointSets sets(n);

  for (std::size_t i = 0; i < n; ++i) {
    const double end_i = notes[i].offset_sec();
    // Sorted by onset, so the overlap with any later note j is
    // min(end_i, end_j) - onset_j, which can only shrink as j advances.
    for (std::size_t j = i + 1; j < n && notes[j].onset_sec < end_i - overlap_eps; ++j) {
      if (notes[j].channel == notes[i].channel) continue;
      const double overlap = std::min(end_i, notes[j].offset_sec()) - notes[j].onset_sec;
      if (overlap > overlap_eps) sets.unite(i, j);
    }
  }

  std::map<std::size_t, SimultaneityBlock> components;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    auto [it, inserted] = components.try_emplace(root);
    SimultaneityBlock& block = it->second;
    if (inserted) {
      block.start_sec = notes[i].onset_sec;
      block.end_sec = notes[i].offset_sec();
    }
    block.start_sec = std::min(block.start_sec, notes[i].onset_sec);
    block.end_sec = std::max(block.end_sec, notes[i].offset_sec());
    block.notes_by_channel[notes[i].channel].push_back(notes[i]);
  }

  std::vector<SimultaneityBlock> kept;
  for (auto& [root, block] : components) {
    if (block.notes_by_channel.size() >= 2) kept.push_back(std::move(block));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const SimultaneityBlock& a, const SimultaneityBlock& b) {
    return a.start_sec < b.start_sec;
  });

  // Components can interleave in time when a channel holds overlapping notes of
  // its own (a long note on channel k, and another note on k that only links
  // to other channels after the first component ends). Such windows are merged
  // so that blocks stay disjoint.
  std::vector<SimultaneityBlock> out;
  for (auto& block : kept) {
    if (!out.empty() && block.start_sec < out.back().end_sec) {
      SimultaneityBlock& into = out.back();
      into.end_sec = std::max(into.end_sec, block.end_sec);
      for (auto& [channel, list] : block.notes_by_channel) {
        auto& dst = into.notes_by_channel[channel];
        dst.insert(dst.end(), list.begin(), list.end());
        sort_events(dst);
      }
      continue;
    }
    out.push_back(std::move(block));
  }
  return out;
}

}  // namespace rite
