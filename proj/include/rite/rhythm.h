#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rite/segmentation.h"

namespace rite {

struct FigureClass {
  std::string_view label;
  double nominal_beats;
};

/// Nominal figures, longest first.
std::span<const FigureClass> figure_catalog();

/// Label for anything shorter than the smallest figure.
inline constexpr std::string_view kFlourishLabel = "16th flourish";
inline constexpr double kDefaultRelTol = 0.10;

struct FigureMatch {
  std::string label;
  bool exact = true;  // false when the nearest figure is further than rel_tol away
};

/// Quantizes a duration in beats. Durations below the smallest nominal value
/// scaled by (1 - rel_tol) are flourishes; everything else snaps to the figure
/// with the smallest relative error |d - nominal| / nominal.
FigureMatch figure_of(double duration_beats, double rel_tol = kDefaultRelTol);

struct RhythmPattern {
  double block_onset_sec = 0.0;
  std::vector<std::pair<int, std::vector<std::string>>> figures_by_channel;  // channel ascending
  bool polyrhythmic = false;
};

struct RhythmResult {
  std::vector<RhythmPattern> patterns;
  std::size_t inexact_figures = 0;
  std::size_t clipped_notes = 0;  // notes sounding outside the span where channels overlap
};

/// True when the channels' figure multisets are not all equal.
bool is_polyrhythmic(const std::vector<std::pair<int, std::vector<std::string>>>& figures_by_channel);

/// One pattern per block; each note is labelled by its full duration_beats even
/// when it starts before or ends after the block window.
RhythmResult polyrhythm_report(std::span<const SimultaneityBlock> blocks, double rel_tol = kDefaultRelTol);

}  // namespace rite
