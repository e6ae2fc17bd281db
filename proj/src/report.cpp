#include "rite/report.h"

#include <cstdio>
#include <sstream>

namespace rite {

namespace {

constexpr std::string_view kMelodicHeaderPlain = "Onset time/Scale/Mode:";
constexpr std::string_view kMelodicHeaderProfiles = "Onset time/Scale/Mode/Pair candidates/Respective Weights:";
constexpr std::string_view kHarmonicHeader = "Fundamental/Chord/Time onset/Midi channel:";
constexpr std::string_view kRhythmicHeader = "Event(sec)/Figures-polyrhythm by channel:";

nlohmann::json pitch_class_json(PitchClass pc) { return {{"index", pc.index()}, {"name", pc.name()}}; }

nlohmann::json candidate_json(const CandidatePair& c) {
  return {{"tonic", pitch_class_json(c.tonic)}, {"mode", c.mode}, {"score", c.score}};
}

std::string join_figures(const std::vector<std::string>& figures) {
  std::string out;
  for (std::size_t i = 0; i < figures.size(); ++i) {
    if (i) out += ", ";
    out += figures[i];
  }
  return out;
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

std::optional<ReportKind> parse_report_kind(std::string_view name) {
  if (name == "melodic") return ReportKind::Melodic;
  if (name == "harmonic") return ReportKind::Harmonic;
  if (name == "rhythmic") return ReportKind::Rhythmic;
  if (name == "all") return ReportKind::All;
  return std::nullopt;
}

std::string format_seconds(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", seconds);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json melodic_json(const MelodicAnalysis& analysis) {
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& seg : analysis.segments) {
    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& c : seg.candidates) candidates.push_back(candidate_json(c));
    nlohmann::json pitches = nlohmann::json::array();
    for (const auto& n : seg.notes) pitches.push_back(n.pitch);
    segments.push_back({
        {"start_sec", seg.start_sec},
        {"end_sec", seg.end_sec},
        {"start_beats", seg.start_beats},
        {"end_beats", seg.end_beats},
        {"note_count", seg.notes.size()},
        {"pitches", std::move(pitches)},
        {"tonic", seg.tonic ? pitch_class_json(*seg.tonic) : nlohmann::json(nullptr)},
        {"mode", seg.mode_label()},
        {"score", seg.chosen ? nlohmann::json(seg.chosen->score) : nlohmann::json(nullptr)},
        {"candidates", std::move(candidates)},
    });
  }
  return {{"channel", analysis.channel},
          {"method", method_name(analysis.method)},
          {"segmentation", analysis.segmentation},
          {"segments", std::move(segments)}};
}

nlohmann::json harmonic_json(std::span<const ChordEvent> events) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : events) {
    out.push_back({{"fundamental", pitch_class_json(e.fundamental)},
                   {"label", e.label},
                   {"onset_sec", e.onset_sec},
                   {"channel", e.channel}});
  }
  return out;
}

nlohmann::json rhythmic_json(std::span<const RhythmPattern> patterns) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : patterns) {
    nlohmann::json channels = nlohmann::json::array();
    for (const auto& [channel, figures] : p.figures_by_channel) {
      channels.push_back({{"channel", channel}, {"figures", figures}});
    }
    out.push_back({{"block_onset_sec", p.block_onset_sec},
                   {"channels", std::move(channels)},
                   {"polyrhythmic", p.polyrhythmic}});
  }
  return out;
}

nlohmann::json diagnostics_json(const Diagnostics& d) {
  return {{"dangling_notes", d.dangling_notes},   {"zero_length_notes", d.zero_length_notes},
          {"stray_note_offs", d.stray_note_offs}, {"no_match_chords", d.no_match_chords},
          {"inexact_figures", d.inexact_figures}, {"clipped_notes", d.clipped_notes},
          {"simultaneity_blocks", d.simultaneity_blocks}};
}

// ---------------------------------------------------------------------------
// Text

std::string emit_melodic_report(const MelodicAnalysis& analysis, Format format) {
  if (format == Format::Json) return melodic_json(analysis).dump(2) + "\n";

  const bool profiles = analysis.method == Method::Profiles;
  std::ostringstream out;
  out << (profiles ? kMelodicHeaderProfiles : kMelodicHeaderPlain) << '\n';
  for (const auto& seg : analysis.segments) {
    out << format_seconds(seg.start_sec) << ' ' << format_seconds(seg.end_sec) << ' '
        << (seg.tonic ? seg.tonic->name() : std::string_view("-")) << ' ' << seg.mode_label();
    if (profiles) {
      out << " [";
      for (std::size_t i = 0; i < seg.candidates.size(); ++i) {
        if (i) out << ',';
        out << '[' << seg.candidates[i].tonic.name() << ", " << seg.candidates[i].mode << ']';
      }
      out << "] [";
      for (std::size_t i = 0; i < seg.candidates.size(); ++i) {
        if (i) out << ',';
        out << seg.candidates[i].score;
      }
      out << ']';
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_harmonic_report(std::span<const ChordEvent> events, Format format) {
  if (format == Format::Json) return harmonic_json(events).dump(2) + "\n";
  std::ostringstream out;
  out << kHarmonicHeader << '\n';
  for (const auto& e : events) {
    out << e.fundamental.name() << ' ' << e.label << ' ' << format_seconds(e.onset_sec) << ' ' << e.channel << '\n';
  }
  return out.str();
}

std::string emit_rhythmic_report(std::span<const RhythmPattern> patterns, Format format) {
  if (format == Format::Json) return rhythmic_json(patterns).dump(2) + "\n";
  std::ostringstream out;
  out << kRhythmicHeader << '\n';
  for (const auto& p : patterns) {
    out << '[' << format_seconds(p.block_onset_sec) << ", [";
    for (std::size_t i = 0; i < p.figures_by_channel.size(); ++i) {
      if (i) out << ", ";
      const auto& figures = p.figures_by_channel[i].second;
      if (figures.size() == 1) {
        out << figures.front();
      } else {
        out << '[' << join_figures(figures) << ']';
      }
    }
    out << "]]\n";
  }
  return out.str();
}

std::string emit_report(const AnalysisReport& report, ReportKind kind, Format format) {
  const bool melodic = kind == ReportKind::Melodic || kind == ReportKind::All;
  const bool harmonic = kind == ReportKind::Harmonic || kind == ReportKind::All;
  const bool rhythmic = kind == ReportKind::Rhythmic || kind == ReportKind::All;

  if (format == Format::Json) {
    nlohmann::json doc = {{"schema_version", kSchemaVersion}, {"source", report.source}};
    if (melodic) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& m : report.melodic) list.push_back(melodic_json(m));
      doc["melodic"] = std::move(list);
    }
    if (harmonic) doc["harmonic"] = harmonic_json(report.harmonic);
    if (rhythmic) doc["rhythmic"] = rhythmic_json(report.rhythmic);
    doc["diagnostics"] = diagnostics_json(report.diagnostics);
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  bool first = true;
  auto section = [&](const std::string& caption, const std::string& body) {
    if (!first) out << '\n';
    first = false;
    out << "# " << caption << '\n' << body;
  };
  if (melodic) {
    for (const auto& m : report.melodic) {
      section("melody channel " + std::to_string(m.channel) + " (" + std::string(method_name(m.method)) + ", " +
                  m.segmentation + ")",
              emit_melodic_report(m, Format::Text));
    }
  }
  if (harmonic) section("harmony", emit_harmonic_report(report.harmonic, Format::Text));
  if (rhythmic) section("rhythm", emit_rhythmic_report(report.rhythmic, Format::Text));
  return out.str();
}

}  // namespace rite
