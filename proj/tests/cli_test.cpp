#include "rite/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rite {
namespace {

namespace fs = std::filesystem;

const std::string kFixture = std::string(RITE_FIXTURE_DIR) + "/aeolian_duet.mid";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rite");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rite_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(CliTest, AnalyzeJsonHappyPath) {
  const auto r = run({"analyze", kFixture, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], 1);
  ASSERT_EQ(doc["melodic"].size(), 2u);
  EXPECT_EQ(doc["melodic"][0]["channel"], 5);
  EXPECT_EQ(doc["melodic"][1]["channel"], 4);
  EXPECT_FALSE(doc["harmonic"].empty());
  EXPECT_FALSE(doc["rhythmic"].empty());
}

TEST(CliTest, AnalyzeTextSectionsAndOutFile) {
  const auto path = scratch("melodic.txt");
  const auto r = run({"analyze", kFixture, "--report", "melodic", "--method", "most-played", "--secondary-channel",
                      "-1", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_TRUE(buf.str().starts_with("# melody channel 5 (most-played, feasibility)\nOnset time/Scale/Mode:\n"));
}

TEST(CliTest, SeedMakesRandomModeReproducible) {
  const auto a = run({"analyze", kFixture, "--method", "most-frequent", "--seed", "7", "--report", "melodic"});
  const auto b = run({"analyze", kFixture, "--method", "most-frequent", "--seed", "7", "--report", "melodic"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, GapThresholdSwitchesSegmentation) {
  const auto r = run({"analyze", kFixture, "--gap-threshold", "0.5", "--report", "melodic", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["melodic"][0]["segmentation"], "gaps");
  EXPECT_EQ(doc["melodic"][0]["segments"].size(), 3u);
}

TEST(CliTest, InputErrorsExitOne) {
  EXPECT_EQ(run({"analyze", "/nonexistent/file.mid"}).code, 1);
  EXPECT_EQ(run({"analyze", kFixture, "--method", "guess"}).code, 1);
  EXPECT_EQ(run({"analyze", kFixture, "--melody-channel", "16"}).code, 1);
  EXPECT_EQ(run({"analyze", kFixture, "--gap-threshold", "0"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);

  const auto bad = scratch("bad.txt");
  std::ofstream(bad) << "0 1 5 60 80 0\n";
  const auto r = run({"analyze", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("BadColumnCount"), std::string::npos) << r.err;
}

TEST(CliTest, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("analyze"), std::string::npos);
}

TEST(CliTest, CatalogDumps) {
  const auto modes = run({"catalog", "modes"});
  ASSERT_EQ(modes.code, 0);
  EXPECT_NE(modes.out.find("mode = octatonic2"), std::string::npos);
  const auto chords = run({"catalog", "chords"});
  EXPECT_NE(chords.out.find("A6 10\n"), std::string::npos);
  const auto figures = run({"catalog", "figures"});
  EXPECT_NE(figures.out.find("triple16th 0.166667"), std::string::npos);
  EXPECT_NE(figures.out.find("16th flourish"), std::string::npos);
}

TEST(CliTest, CustomChordCatalog) {
  const auto path = scratch("fourths.txt");
  std::ofstream(path) << "fourth 5\n";
  const auto r = run({"analyze", kFixture, "--report", "harmonic", "--chord-catalog", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("dom7"), std::string::npos);
  EXPECT_NE(r.out.find("A fourth 0.0000 4"), std::string::npos);
}

TEST(CliTest, CompareAgainstSections) {
  const auto report = scratch("report.json");
  ASSERT_EQ(run({"analyze", kFixture, "--format", "json", "--gap-threshold", "0.5", "--out", report.string()}).code, 0);
  const auto r = run({"compare", report.string(), std::string(RITE_FIXTURE_DIR) + "/aeolian_duet_sections.txt",
                      std::string(RITE_FIXTURE_DIR) + "/aeolian_duet_measures.txt", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["reference"], 3);
  EXPECT_EQ(doc["predicted"], 3);
  EXPECT_DOUBLE_EQ(doc["f1"].get<double>(), 1.0);

  const auto missing = run({"compare", report.string(), std::string(RITE_DATA_DIR) + "/rite_sections.txt",
                            std::string(RITE_FIXTURE_DIR) + "/aeolian_duet_measures.txt"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("UncoveredMeasure"), std::string::npos);
}

}  // namespace
}  // namespace rite
