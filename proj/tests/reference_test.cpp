#include "rite/reference.h"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <sstream>

#include "rite/error.h"
#include "support/melody.h"

namespace rite {
namespace {

ReferenceAnnotation annotation(const std::string& text) {
  std::istringstream in(text);
  return ReferenceAnnotation::parse(in);
}

MeasureMap measures(const std::string& text) {
  std::istringstream in(text);
  return MeasureMap::parse(in);
}

// Maximum bipartite matching by augmenting paths.
std::size_t max_matching(const std::vector<double>& pred, const std::vector<double>& ref, double tol) {
  std::vector<int> owner(ref.size(), -1);
  std::size_t total = 0;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    std::vector<bool> seen(ref.size(), false);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (std::size_t r = 0; r < ref.size(); ++r) {
        if (seen[r] || std::abs(pred[u] - ref[r]) > tol) continue;
        seen[r] = true;
        if (owner[r] < 0 || augment(static_cast<std::size_t>(owner[r]))) {
          owner[r] = static_cast<int>(u);
          return true;
        }
      }
      return false;
    };
    if (augment(p)) ++total;
  }
  return total;
}

TEST(AgreementTest, IdentityIsPerfect) {
  const std::vector<double> b = {0.0, 48.0, 76.0, 96.0};
  const auto s = compare_boundaries(b, b, 0.0);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
  EXPECT_EQ(s.count_difference, 0);
}

TEST(AgreementTest, NoPredictions) {
  const auto s = compare_boundaries({}, {0.0, 10.0}, 1.0);
  EXPECT_DOUBLE_EQ(s.precision, 0.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.0);
  EXPECT_DOUBLE_EQ(s.f1, 0.0);
  EXPECT_EQ(s.count_difference, -2);
}

TEST(AgreementTest, EightOfTwelveAgainstTen) {
  std::vector<double> ref, pred;
  for (int i = 0; i < 10; ++i) ref.push_back(100.0 * i);
  for (int i = 0; i < 8; ++i) pred.push_back(100.0 * i + 0.5);
  for (int i = 0; i < 4; ++i) pred.push_back(50.0 + 100.0 * i);
  const auto s = compare_boundaries(pred, ref, 1.0);
  EXPECT_EQ(s.matched, 8u);
  EXPECT_DOUBLE_EQ(s.precision, 8.0 / 12.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.8);
  EXPECT_NEAR(s.f1, 2 * (8.0 / 12.0) * 0.8 / (8.0 / 12.0 + 0.8), 1e-12);
  EXPECT_EQ(s.count_difference, 2);
}

TEST(AgreementTest, OneToOneMatching) {
  // Two predictions near one reference boundary count once.
  const auto s = compare_boundaries({9.8, 10.2}, {10.0}, 1.0);
  EXPECT_EQ(s.matched, 1u);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_THROW(compare_boundaries({1.0}, {1.0}, -1.0), Error);
}

TEST(AgreementTest, MaximumMatchingSymmetricAndMonotone) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(0.0, 100.0);
  std::uniform_int_distribution<int> count(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> a(static_cast<std::size_t>(count(rng))), b(static_cast<std::size_t>(count(rng)));
    for (auto& x : a) x = pos(rng);
    for (auto& x : b) x = pos(rng);
    std::size_t prev = 0;
    for (double tol : {0.0, 0.5, 2.0, 5.0, 20.0}) {
      const auto ab = compare_boundaries(a, b, tol);
      const auto ba = compare_boundaries(b, a, tol);
      ASSERT_EQ(ab.matched, max_matching(a, b, tol));
      ASSERT_EQ(ab.matched, ba.matched);
      ASSERT_DOUBLE_EQ(ab.precision, ba.recall);
      ASSERT_DOUBLE_EQ(ab.f1, ba.f1);
      ASSERT_GE(ab.matched, prev);
      prev = ab.matched;
    }
  }
}

TEST(AnnotationTest, ParseSectionsTable) {
  const auto a = ReferenceAnnotation::load(std::string(RITE_DATA_DIR) + "/rite_sections.txt");
  ASSERT_EQ(a.sections.size(), 11u);
  EXPECT_EQ(a.sections.front().label, "A");
  EXPECT_EQ(a.sections[9].label, "A'");
  EXPECT_EQ(a.sections[9].start_measure, 66);
  EXPECT_EQ(a.sections.back().end_measure, 75);
}

TEST(AnnotationTest, RejectsMalformedInput) {
  auto code = [](const std::string& text) {
    try {
      annotation(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoFailure;
  };
  EXPECT_EQ(code("A 1\n"), ErrorCode::InvalidAnnotation);
  EXPECT_EQ(code("A 1 x\n"), ErrorCode::InvalidAnnotation);
  EXPECT_EQ(code("A 5 2\n"), ErrorCode::InvalidAnnotation);
  EXPECT_EQ(code("A 1 4\nB 6 9\n"), ErrorCode::InvalidAnnotation);
  EXPECT_EQ(code("A 1 4\nB 4 9\n"), ErrorCode::InvalidAnnotation);
  EXPECT_NO_THROW(annotation("# ok\nA 1 4\n\nB 5 9\n"));
}

TEST(MeasureMapTest, ParseAndLookup) {
  const auto m = measures("1 0\n2 4\n3 7\n");
  EXPECT_EQ(m.start_beats(2), 4.0);
  EXPECT_FALSE(m.start_beats(4).has_value());
  EXPECT_THROW(measures("1 0\n1 4\n"), Error);
  EXPECT_THROW(measures("1 4\n2 0\n"), Error);
  EXPECT_THROW(measures("1\n"), Error);
}

TEST(CompareToReferenceTest, SegmentsAgainstSections) {
  const auto a = annotation("A 1 2\nB 3 4\nC 5 6\n");
  const auto m = measures("1 0\n2 4\n3 8\n4 12\n5 16\n6 20\n");
  std::vector<MelodySegment> segs(3);
  segs[0].start_beats = 0.0;
  segs[1].start_beats = 8.5;
  segs[2].start_beats = 13.0;
  const auto s = compare_to_reference(segs, a, m, 1.0);
  EXPECT_EQ(s.matched, 2u);
  EXPECT_EQ(s.reference, 3u);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);

  EXPECT_DOUBLE_EQ(compare_to_reference({}, a, m, 1.0).recall, 0.0);
}

TEST(CompareToReferenceTest, UncoveredMeasure) {
  const auto a = annotation("A 1 2\nB 3 4\n");
  const auto m = measures("1 0\n2 4\n");
  try {
    compare_to_reference({}, a, m, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UncoveredMeasure);
  }
}

}  // namespace
}  // namespace rite
