#include "rite/cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rite/analysis.h"
#include "rite/error.h"
#include "rite/reference.h"
#include "rite/report.h"

namespace rite {

namespace {

struct AnalyzeArgs {
  std::string input;
  int melody_channel = kDefaultMelodyChannel;
  int secondary_channel = kDefaultSecondaryChannel;
  std::string method = "profiles";
  std::string report = "all";
  std::string format = "text";
  std::optional<double> gap_threshold;
  std::string chord_catalog;
  std::string mode_catalog;
  double rel_tol = kDefaultRelTol;
  std::optional<std::uint64_t> seed;
  double overlap_eps = 0.0;
  std::string out_path;
};

struct CompareArgs {
  std::string report_path;
  std::string annotation_path;
  std::string measure_map_path;
  double tol_beats = 1.0;
  std::optional<int> channel;
  std::string format = "text";
};

struct CatalogArgs {
  std::string which;
  std::string chord_catalog;
  std::string mode_catalog;
};

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error(ErrorCode::IoFailure, "write failed for " + path);
}

std::string run_analyze(const AnalyzeArgs& a) {
  const auto method = parse_method(a.method);
  const auto kind = parse_report_kind(a.report);
  const auto format = parse_format(a.format);
  if (!method || !kind || !format) throw Error(ErrorCode::OutOfRange, "bad --method/--report/--format value");

  ModeCatalog modes = a.mode_catalog.empty() ? ModeCatalog::builtin() : ModeCatalog::load(a.mode_catalog);
  ChordCatalog chords = a.chord_catalog.empty() ? ChordCatalog::builtin() : ChordCatalog::load(a.chord_catalog);

  AnalysisOptions options;
  options.melody_channel = a.melody_channel;
  options.secondary_channel = a.secondary_channel < 0 ? std::nullopt : std::optional<int>(a.secondary_channel);
  options.method = *method;
  options.gap_threshold_sec = a.gap_threshold;
  options.rel_tol = a.rel_tol;
  options.seed = a.seed;
  options.overlap_eps = a.overlap_eps;
  options.modes = &modes;
  options.chords = &chords;

  const NoteTable table = load_any(a.input);
  const AnalysisReport report = analyze(table, options);
  return emit_report(report, *kind, *format);
}

std::string run_compare(const CompareArgs& a) {
  const auto format = parse_format(a.format);
  if (!format) throw Error(ErrorCode::OutOfRange, "bad --format value");

  std::ifstream in(a.report_path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + a.report_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidAnnotation, a.report_path + ": " + e.what());
  }
  if (!doc.contains("melodic") || !doc["melodic"].is_array() || doc["melodic"].empty()) {
    throw Error(ErrorCode::InvalidAnnotation, a.report_path + ": no melodic analysis in report");
  }

  const nlohmann::json* analysis = &doc["melodic"].front();
  if (a.channel) {
    analysis = nullptr;
    for (const auto& m : doc["melodic"]) {
      if (m.value("channel", -1) == *a.channel) analysis = &m;
    }
    if (!analysis) throw Error(ErrorCode::InvalidAnnotation, "no melodic analysis for channel " + std::to_string(*a.channel));
  }

  std::vector<double> predicted;
  try {
    for (const auto& seg : analysis->at("segments")) predicted.push_back(seg.at("start_beats").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidAnnotation, a.report_path + ": " + e.what());
  }

  const auto annotation = ReferenceAnnotation::load(a.annotation_path);
  const auto measure_map = MeasureMap::load(a.measure_map_path);
  const auto s = compare_boundaries(std::move(predicted), reference_boundaries(annotation, measure_map), a.tol_beats);

  if (*format == Format::Json) {
    nlohmann::json j = {{"schema_version", kSchemaVersion},
                        {"tol_beats", a.tol_beats},
                        {"precision", s.precision},
                        {"recall", s.recall},
                        {"f1", s.f1},
                        {"matched", s.matched},
                        {"predicted", s.predicted},
                        {"reference", s.reference},
                        {"count_difference", s.count_difference}};
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "precision %.4f\nrecall %.4f\nf1 %.4f\n", s.precision, s.recall, s.f1);
  out << buf << "matched " << s.matched << "\npredicted " << s.predicted << "\nreference " << s.reference
      << "\ncount_difference " << s.count_difference << '\n';
  return out.str();
}

std::string run_catalog(const CatalogArgs& a) {
  if (a.which == "modes") {
    return a.mode_catalog.empty() ? ModeCatalog::builtin().format() : ModeCatalog::load(a.mode_catalog).format();
  }
  if (a.which == "chords") {
    return a.chord_catalog.empty() ? ChordCatalog::builtin().format() : ChordCatalog::load(a.chord_catalog).format();
  }
  std::ostringstream out;
  out << "# Rhythmic figures: label and nominal duration in beats.\n";
  char buf[64];
  for (const auto& f : figure_catalog()) {
    std::snprintf(buf, sizeof buf, "%.6f", f.nominal_beats);
    out << f.label << ' ' << buf << '\n';
  }
  out << kFlourishLabel << " -\n";
  return out.str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic music analysis: tonal centre and mode, chords, polyrhythm", "rite"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyse a MIDI file or text note table");
  analyze_cmd->add_option("file", analyze_args.input, "Standard MIDI File or 7-column note table")->required();
  analyze_cmd->add_option("--melody-channel", analyze_args.melody_channel, "Channel carrying the main melody")
      ->check(CLI::Range(0, 15))
      ->capture_default_str();
  analyze_cmd->add_option("--secondary-channel", analyze_args.secondary_channel, "Second melody channel, -1 to skip")
      ->check(CLI::Range(-1, 15))
      ->capture_default_str();
  analyze_cmd->add_option("--method", analyze_args.method, "Tonal centre strategy")
      ->check(CLI::IsMember({"profiles", "most-played", "most-frequent"}))
      ->capture_default_str();
  analyze_cmd->add_option("--report", analyze_args.report, "Report section")
      ->check(CLI::IsMember({"melodic", "harmonic", "rhythmic", "all"}))
      ->capture_default_str();
  analyze_cmd->add_option("--format", analyze_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  analyze_cmd->add_option("--gap-threshold", analyze_args.gap_threshold, "Segment at silences longer than this (s)")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--chord-catalog", analyze_args.chord_catalog, "Chord template file");
  analyze_cmd->add_option("--mode-catalog", analyze_args.mode_catalog, "Mode catalog file");
  analyze_cmd->add_option("--rel-tol", analyze_args.rel_tol, "Relative tolerance for rhythmic figures")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  analyze_cmd->add_option("--seed", analyze_args.seed, "Pick fixed-tonic modes at random with this seed");
  analyze_cmd->add_option("--overlap-eps", analyze_args.overlap_eps, "Minimum overlap (s) for simultaneity")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  analyze_cmd->add_option("--out", analyze_args.out_path, "Write the report here instead of stdout");

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Score a JSON report against reference section boundaries");
  compare_cmd->add_option("report", compare_args.report_path, "JSON report from 'analyze'")->required();
  compare_cmd->add_option("annotation", compare_args.annotation_path, "Reference sections file")->required();
  compare_cmd->add_option("measure-map", compare_args.measure_map_path, "Measure to beat map")->required();
  compare_cmd->add_option("--tol-beats", compare_args.tol_beats, "Boundary matching tolerance in beats")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  compare_cmd->add_option("--channel", compare_args.channel, "Melodic analysis to score (default: first)");
  compare_cmd->add_option("--format", compare_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  CatalogArgs catalog_args;
  auto* catalog_cmd = app.add_subcommand("catalog", "Print a built-in catalog");
  catalog_cmd->add_option("which", catalog_args.which, "modes, chords or figures")
      ->required()
      ->check(CLI::IsMember({"modes", "chords", "figures"}));
  catalog_cmd->add_option("--chord-catalog", catalog_args.chord_catalog, "Chord template file");
  catalog_cmd->add_option("--mode-catalog", catalog_args.mode_catalog, "Mode catalog file");

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (analyze_cmd->parsed()) {
      write_output(run_analyze(analyze_args), analyze_args.out_path, out);
    } else if (compare_cmd->parsed()) {
      write_output(run_compare(compare_args), "", out);
    } else if (catalog_cmd->parsed()) {
      write_output(run_catalog(catalog_args), "", out);
    }
  } catch (const Error& e) {
    err << "rite: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::logic_error& e) {
    err << "rite: internal error: " << e.what() << '\n';
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "rite: internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace rite
