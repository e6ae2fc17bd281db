#include "rite/report.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support/melody.h"

namespace rite {
namespace {

using test::melody;
using test::note;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

CandidatePair pair(int tonic, const std::string& mode, int score) {
  return {PitchClass::wrap(tonic), *ModeCatalog::builtin().find(mode), mode, score};
}

TEST(FormatSecondsTest, FourDecimals) {
  EXPECT_EQ(format_seconds(0.0), "0.0000");
  EXPECT_EQ(format_seconds(17.1636), "17.1636");
  EXPECT_EQ(format_seconds(168.511), "168.5110");
  EXPECT_EQ(format_seconds(1.0 / 3.0), "0.3333");
}

TEST(MelodicReportTest, ProfilesRow) {
  MelodySegment seg;
  seg.start_sec = 0.0;
  seg.end_sec = 17.1636;
  seg.candidates = {pair(0, "ionian_major", 113), pair(0, "lydian", 133)};
  seg.chosen = seg.candidates[1];
  seg.tonic = seg.chosen->tonic;
  const MelodicAnalysis analysis{5, Method::Profiles, "feasibility", {seg}};
  const auto lines = lines_of(emit_melodic_report(analysis, Format::Text));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "Onset time/Scale/Mode/Pair candidates/Respective Weights:");
  EXPECT_EQ(lines[1], "0.0000 17.1636 C/B# lydian [[C/B#, ionian_major],[C/B#, lydian]] [113,133]");
}

TEST(MelodicReportTest, UnknownModeRows) {
  MelodySegment seg;
  seg.start_sec = 2.5;
  seg.end_sec = 4.0;
  seg.tonic = PitchClass::wrap(7);
  const MelodicAnalysis fixed{5, Method::MostPlayed, "feasibility", {seg}};
  const auto lines = lines_of(emit_melodic_report(fixed, Format::Text));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "Onset time/Scale/Mode:");
  EXPECT_EQ(lines[1], "2.5000 4.0000 G notknownmode");

  seg.tonic.reset();
  const MelodicAnalysis prof{5, Method::Profiles, "feasibility", {seg}};
  EXPECT_EQ(lines_of(emit_melodic_report(prof, Format::Text))[1], "2.5000 4.0000 - notknownmode [] []");
}

TEST(MelodicReportTest, EmptyListPrintsHeaderOnly) {
  const MelodicAnalysis empty{5, Method::Profiles, "feasibility", {}};
  EXPECT_EQ(emit_melodic_report(empty, Format::Text), "Onset time/Scale/Mode/Pair candidates/Respective Weights:\n");
  const MelodicAnalysis plain{5, Method::MostFrequent, "gaps", {}};
  EXPECT_EQ(emit_melodic_report(plain, Format::Text), "Onset time/Scale/Mode:\n");
}

TEST(HarmonicReportTest, RowsInTimeThenChannelOrder) {
  const std::vector<ChordEvent> events = {{PitchClass::wrap(8), "P4", 58.3477, 13},
                                          {PitchClass::wrap(3), "13th", 58.5749, 2},
                                          {PitchClass::wrap(3), "13th", 58.5749, 13}};
  const auto lines = lines_of(emit_harmonic_report(events, Format::Text));
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "Fundamental/Chord/Time onset/Midi channel:");
  EXPECT_EQ(lines[1], "G#/Ab P4 58.3477 13");
  EXPECT_EQ(lines[2], "D#/Eb 13th 58.5749 2");
  EXPECT_EQ(lines[3], "D#/Eb 13th 58.5749 13");
}

TEST(RhythmicReportTest, RowShapes) {
  const std::vector<RhythmPattern> patterns = {
      {59.7113, {{4, {"triplethalf"}}, {5, {"16th flourish"}}}, true},
      {60.0, {{2, {"8thnote", "16thnote"}}, {13, {"8thnote"}}}, true}};
  const auto lines = lines_of(emit_rhythmic_report(patterns, Format::Text));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "Event(sec)/Figures-polyrhythm by channel:");
  EXPECT_EQ(lines[1], "[59.7113, [triplethalf, 16th flourish]]");
  EXPECT_EQ(lines[2], "[60.0000, [[8thnote, 16thnote], 8thnote]]");
}

NoteTable random_table(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pitch(48, 84), channel(3, 6), beats(1, 4);
  NoteTable t;
  t.source = "random";
  for (int ch = 3; ch <= 6; ++ch) {
    double onset = 0.0;
    for (int i = 0; i < 40; ++i) {
      const int b = beats(rng);
      t.events.push_back(note(ch, pitch(rng), onset, 0.25 * b, 0.5 * b));
      onset += 0.25 * b;
    }
  }
  sort_events(t.events);
  return t;
}

TEST(EmitReportTest, JsonMirrorsText) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto report = analyze(random_table(seed));
    const auto doc = nlohmann::json::parse(emit_report(report, ReportKind::All, Format::Json));
    EXPECT_EQ(doc["schema_version"], kSchemaVersion);
    EXPECT_EQ(doc["source"], "random");

    ASSERT_EQ(doc["melodic"].size(), report.melodic.size());
    for (std::size_t m = 0; m < report.melodic.size(); ++m) {
      const auto text = lines_of(emit_melodic_report(report.melodic[m], Format::Text));
      const auto& segs = doc["melodic"][m]["segments"];
      ASSERT_EQ(text.size(), segs.size() + 1);
      for (std::size_t i = 0; i < segs.size(); ++i) {
        std::string row = format_seconds(segs[i]["start_sec"].get<double>()) + " " +
                          format_seconds(segs[i]["end_sec"].get<double>()) + " " +
                          segs[i]["tonic"]["name"].get<std::string>() + " " + segs[i]["mode"].get<std::string>();
        EXPECT_EQ(text[i + 1].substr(0, row.size()), row);
        std::string weights = "[";
        for (const auto& c : segs[i]["candidates"]) {
          if (weights.size() > 1) weights += ",";
          weights += std::to_string(c["score"].get<int>());
        }
        weights += "]";
        EXPECT_TRUE(text[i + 1].ends_with(weights)) << text[i + 1];
      }
    }

    const auto harm = lines_of(emit_harmonic_report(report.harmonic, Format::Text));
    ASSERT_EQ(harm.size(), doc["harmonic"].size() + 1);
    for (std::size_t i = 0; i < doc["harmonic"].size(); ++i) {
      const auto& e = doc["harmonic"][i];
      EXPECT_EQ(harm[i + 1], e["fundamental"]["name"].get<std::string>() + " " + e["label"].get<std::string>() + " " +
                                 format_seconds(e["onset_sec"].get<double>()) + " " +
                                 std::to_string(e["channel"].get<int>()));
    }

    const auto rhy = lines_of(emit_rhythmic_report(report.rhythmic, Format::Text));
    ASSERT_EQ(rhy.size(), doc["rhythmic"].size() + 1);
    for (std::size_t i = 0; i < doc["rhythmic"].size(); ++i) {
      EXPECT_TRUE(rhy[i + 1].starts_with("[" + format_seconds(doc["rhythmic"][i]["block_onset_sec"].get<double>())));
    }
  }
}

TEST(EmitReportTest, DeterministicAcrossRuns) {
  const auto table = random_table(42);
  for (auto format : {Format::Text, Format::Json}) {
    const auto a = emit_report(analyze(table), ReportKind::All, format);
    const auto b = emit_report(analyze(table), ReportKind::All, format);
    EXPECT_EQ(a, b);
  }
}

TEST(EmitReportTest, SectionSelection) {
  const auto report = analyze(random_table(3));
  const auto doc = nlohmann::json::parse(emit_report(report, ReportKind::Harmonic, Format::Json));
  EXPECT_TRUE(doc.contains("harmonic"));
  EXPECT_FALSE(doc.contains("melodic"));
  EXPECT_FALSE(doc.contains("rhythmic"));
  EXPECT_TRUE(doc.contains("diagnostics"));

  const auto text = emit_report(report, ReportKind::Rhythmic, Format::Text);
  EXPECT_TRUE(text.starts_with("# rhythm\nEvent(sec)/Figures-polyrhythm by channel:\n"));
  EXPECT_EQ(text.find("Fundamental/Chord"), std::string::npos);
}

TEST(EmitReportTest, ParseNames) {
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_FALSE(parse_format("xml").has_value());
  EXPECT_EQ(parse_report_kind("all"), ReportKind::All);
  EXPECT_FALSE(parse_report_kind("tonal").has_value());
  EXPECT_EQ(parse_method("most-played"), Method::MostPlayed);
  EXPECT_EQ(method_name(Method::MostFrequent), "most-frequent");
}

TEST(AnalyzeTest, EmptyTableGivesHeaderOnlyReports) {
  NoteTable empty;
  const auto report = analyze(empty);
  ASSERT_EQ(report.melodic.size(), 2u);
  EXPECT_TRUE(report.melodic[0].segments.empty());
  EXPECT_TRUE(report.harmonic.empty());
  EXPECT_TRUE(report.rhythmic.empty());
  EXPECT_EQ(emit_melodic_report(report.melodic[0], Format::Text),
            "Onset time/Scale/Mode/Pair candidates/Respective Weights:\n");
}

TEST(AnalyzeTest, MethodsAndGapSegmentation) {
  NoteTable t;
  t.events = melody({69, 71, 72, 74, 76, 77, 79, 69});
  AnalysisOptions opt;
  opt.secondary_channel.reset();
  opt.method = Method::MostPlayed;
  auto r = analyze(t, opt);
  ASSERT_EQ(r.melodic.size(), 1u);
  ASSERT_EQ(r.melodic[0].segments.size(), 1u);
  EXPECT_EQ(r.melodic[0].segments[0].tonic->index(), 9);
  EXPECT_EQ(r.melodic[0].segments[0].mode_label(), "aeolian");

  opt.method = Method::Profiles;
  opt.gap_threshold_sec = 0.1;
  r = analyze(t, opt);
  EXPECT_EQ(r.melodic[0].segmentation, "gaps");
  ASSERT_EQ(r.melodic[0].segments.size(), 1u);
  EXPECT_FALSE(r.melodic[0].segments[0].candidates.empty());
}

}  // namespace
}  // namespace rite
