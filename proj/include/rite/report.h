#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rite/analysis.h"

namespace rite {

enum class Format { Text, Json };
enum class ReportKind { Melodic, Harmonic, Rhythmic, All };

std::optional<Format> parse_format(std::string_view name);
std::optional<ReportKind> parse_report_kind(std::string_view name);

inline constexpr int kSchemaVersion = 1;

/// Seconds with exactly four decimals.
std::string format_seconds(double seconds);

std::string emit_melodic_report(const MelodicAnalysis& analysis, Format format);
std::string emit_harmonic_report(std::span<const ChordEvent> events, Format format);
std::string emit_rhythmic_report(std::span<const RhythmPattern> patterns, Format format);

nlohmann::json melodic_json(const MelodicAnalysis& analysis);
nlohmann::json harmonic_json(std::span<const ChordEvent> events);
nlohmann::json rhythmic_json(std::span<const RhythmPattern> patterns);
nlohmann::json diagnostics_json(const Diagnostics& diagnostics);

/// Whole-report document. JSON carries "schema_version" and every requested
/// section; text concatenates the section layouts.
std::string emit_report(const AnalysisReport& report, ReportKind kind, Format format);

}  // namespace rite
