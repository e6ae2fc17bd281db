#include "rite/harmony.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "rite/error.h"

namespace rite {

PitchClassSet ChordTemplate::pitch_set(PitchClass root) const {
  PitchClassSet set;
  set.insert(root.index());
  for (int i : intervals) set.insert(root.index() + i);
  return set;
}

ChordCatalog::ChordCatalog(std::vector<ChordTemplate> templates) : templates_(std::move(templates)) {
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    const auto& t = templates_[i];
    if (t.label.empty()) throw Error(ErrorCode::InvalidCatalog, "chord template without a label");
    if (t.intervals.empty()) throw Error(ErrorCode::InvalidCatalog, "chord '" + t.label + "' has no intervals");
    PitchClassSet seen;
    for (int iv : t.intervals) {
      if (iv < 1 || iv > 11 || seen.contains(iv)) {
        throw Error(ErrorCode::InvalidCatalog, "chord '" + t.label + "': bad or repeated interval " + std::to_string(iv));
      }
      seen.insert(iv);
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (templates_[j].label == t.label) throw Error(ErrorCode::InvalidCatalog, "duplicate chord '" + t.label + "'");
    }
  }
  order_.resize(templates_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  std::stable_sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
    return templates_[a].intervals.size() > templates_[b].intervals.size();
  });
}

const ChordCatalog& ChordCatalog::builtin() {
  static const ChordCatalog catalog(std::vector<ChordTemplate>{
      {"m2", {1}},
      {"M2", {2}},
      {"m3", {3}},
      {"M3", {4}},
      {"P4", {5}},
      {"A4", {6}},
      {"P5", {7}},
      {"m6", {8}},
      {"M6", {9}},
      {"A6", {10}},
      {"M7", {11}},
      {"perfectmajor", {4, 7}},
      {"perfectminor", {3, 7}},
      {"diminished", {3, 6}},
      {"augmented", {4, 8}},
      {"dom7", {4, 7, 10}},
      {"maj7", {4, 7, 11}},
      {"min7", {3, 7, 10}},
      {"halfdim7", {3, 6, 10}},
      {"9th", {4, 7, 10, 2}},
      {"11th", {4, 7, 10, 2, 5}},
      {"13th", {4, 7, 10, 2, 5, 9}},
  });
  return catalog;
}

ChordCatalog ChordCatalog::parse(std::istream& in) {
  std::vector<ChordTemplate> templates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    ChordTemplate t;
    fields >> t.label;
    for (std::string tok; fields >> tok;) {
      try {
        std::size_t used = 0;
        t.intervals.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidCatalog, "line " + std::to_string(line_no) + ": bad interval '" + tok + "'");
      }
    }
    templates.push_back(std::move(t));
  }
  return ChordCatalog(std::move(templates));
}

ChordCatalog ChordCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return parse(in);
}

std::string ChordCatalog::format() const {
  std::ostringstream out;
  out << "# Chord catalog: <label> followed by semitones above the fundamental.\n";
  for (const auto& t : templates_) {
    out << t.label;
    for (int i : t.intervals) out << ' ' << i;
    out << '\n';
  }
  return out.str();
}

std::optional<ChordLabel> chord_label(PitchClassSet pitches, const ChordCatalog& catalog,
                                      std::optional<PitchClass> bass) {
  if (pitches.size() < 2) throw Error(ErrorCode::OutOfRange, "chord labelling needs at least two pitch classes");
  const int bass_index = bass && pitches.contains(bass->index()) ? bass->index() : -1;

  // Walk from the most specific template size to the least; each later match
  // replaces the earlier one, so the survivor comes from the smallest size that
  // still contains the set. Within a size the bass as fundamental is preferred,
  // then the earlier catalog entry, then the lower root.
  const auto order = catalog.specificity_order();
  std::optional<ChordLabel> result;
  for (auto lo = order.begin(); lo != order.end();) {
    const auto size = catalog.templates()[*lo].intervals.size();
    const auto hi = std::find_if(lo, order.end(),
                                 [&](std::size_t i) { return catalog.templates()[i].intervals.size() != size; });
    std::optional<ChordLabel> hit;
    if (bass_index >= 0) {
      const PitchClass root = PitchClass::wrap(bass_index);
      for (auto it = lo; it != hi && !hit; ++it) {
        const ChordTemplate& t = catalog.templates()[*it];
        if (pitches.subset_of(t.pitch_set(root))) hit = ChordLabel{root, t.label};
      }
    }
    for (auto it = lo; it != hi && !hit; ++it) {
      const ChordTemplate& t = catalog.templates()[*it];
      for (int root = 0; root < kPitchClasses && !hit; ++root) {
        if (pitches.contains(root) && pitches.subset_of(t.pitch_set(PitchClass::wrap(root)))) {
          hit = ChordLabel{PitchClass::wrap(root), t.label};
        }
      }
    }
    if (hit) result = std::move(hit);
    lo = hi;
  }
  return result;
}

HarmonyResult analyze_blocks_harmony(std::span<const SimultaneityBlock> blocks, const ChordCatalog& catalog) {
  HarmonyResult result;
  for (const auto& block : blocks) {
    for (const auto& [channel, notes] : block.notes_by_channel) {
      struct Group {
        double onset_sec;
        int lowest_pitch;
        PitchClassSet set;
      };
      std::map<long long, Group> groups;
      for (const auto& n : notes) {
        auto [it, inserted] = groups.try_emplace(std::llround(n.onset_sec / kOnsetResolutionSec),
                                                 Group{n.onset_sec, n.pitch, {}});
        it->second.onset_sec = std::min(it->second.onset_sec, n.onset_sec);
        it->second.lowest_pitch = std::min(it->second.lowest_pitch, n.pitch);
        it->second.set.insert(n.pitch);
      }
      for (const auto& [key, group] : groups) {
        if (group.set.size() < 2) continue;
        if (auto label = chord_label(group.set, catalog, pitch_class(group.lowest_pitch))) {
          result.events.push_back({label->fundamental, label->label, group.onset_sec, channel});
        } else {
          ++result.no_match;
        }
      }
    }
  }
  std::stable_sort(result.events.begin(), result.events.end(), [](const ChordEvent& a, const ChordEvent& b) {
    return std::pair(a.onset_sec, a.channel) < std::pair(b.onset_sec, b.channel);
  });
  return result;
}

}  // namespace rite
