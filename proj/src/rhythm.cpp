#include "rite/rhythm.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "rite/error.h"

namespace rite {

namespace {

constexpr std::array<FigureClass, 9> kFigures = {{
    {"wholenote", 4.0},
    {"halfnote", 2.0},
    {"triplethalf", 4.0 / 3.0},
    {"quarternote", 1.0},
    {"triplequarter", 2.0 / 3.0},
    {"8thnote", 0.5},
    {"triple8th", 1.0 / 3.0},
    {"16thnote", 0.25},
    {"triple16th", 1.0 / 6.0},
}};

}  // namespace

std::span<const FigureClass> figure_catalog() { return kFigures; }

FigureMatch figure_of(double duration_beats, double rel_tol) {
  if (!(duration_beats > 0.0)) {
    throw Error(ErrorCode::NonPositiveDuration, "figure of a non-positive duration " + std::to_string(duration_beats));
  }
  if (rel_tol < 0.0) throw Error(ErrorCode::OutOfRange, "relative tolerance must be >= 0");

  if (duration_beats < kFigures.back().nominal_beats * (1.0 - rel_tol)) return {std::string(kFlourishLabel), true};

  const FigureClass* best = nullptr;
  double best_err = 0.0;
  for (const auto& f : kFigures) {
    const double err = std::abs(duration_beats - f.nominal_beats) / f.nominal_beats;
    if (best == nullptr || err < best_err) {
      best = &f;
      best_err = err;
    }
  }
  return {std::string(best->label), best_err <= rel_tol};
}

bool is_polyrhythmic(const std::vector<std::pair<int, std::vector<std::string>>>& figures_by_channel) {
  if (figures_by_channel.size() < 2) return false;
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto first = sorted(figures_by_channel.front().second);
  return std::any_of(figures_by_channel.begin() + 1, figures_by_channel.end(),
                     [&](const auto& entry) { return sorted(entry.second) != first; });
}

namespace {

// Span from the first to the last instant where two channels actually sound
// together. Falls back to the block window if no pair overlaps.
std::pair<double, double> shared_span(const SimultaneityBlock& block) {
  double lo = block.end_sec;
  double hi = block.start_sec;
  for (auto a = block.notes_by_channel.begin(); a != block.notes_by_channel.end(); ++a) {
    for (auto b = std::next(a); b != block.notes_by_channel.end(); ++b) {
      for (const auto& x : a->second) {
        for (const auto& y : b->second) {
          const double start = std::max(x.onset_sec, y.onset_sec);
          const double end = std::min(x.offset_sec(), y.offset_sec());
          if (end > start) {
            lo = std::min(lo, start);
            hi = std::max(hi, end);
          }
        }
      }
    }
  }
  if (hi < lo) return {block.start_sec, block.end_sec};
  return {lo, hi};
}

}  // namespace

RhythmResult polyrhythm_report(std::span<const SimultaneityBlock> blocks, double rel_tol) {
  RhythmResult result;
  for (const auto& block : blocks) {
    const auto [shared_start, shared_end] = shared_span(block);
    RhythmPattern pattern;
    pattern.block_onset_sec = block.start_sec;
    for (const auto& [channel, notes] : block.notes_by_channel) {
      std::vector<std::string> labels;
      for (const auto& n : notes) {
        FigureMatch m = figure_of(n.duration_beats, rel_tol);
        if (!m.exact) ++result.inexact_figures;
        if (n.onset_sec < shared_start || n.offset_sec() > shared_end) ++result.clipped_notes;
        labels.push_back(std::move(m.label));
      }
      pattern.figures_by_channel.emplace_back(channel, std::move(labels));
    }
    pattern.polyrhythmic = is_polyrhythmic(pattern.figures_by_channel);
    result.patterns.push_back(std::move(pattern));
  }
  return result;
}

}  // namespace rite
