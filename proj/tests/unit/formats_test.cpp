#include "rssiloc/formats.hpp"

#include <random>

#include <gtest/gtest.h>

#include "rssiloc/error.hpp"
#include "rssiloc/text_io.hpp"
#include "support/corpus.hpp"

namespace rssiloc {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an rssiloc::Error";
  return ErrorCode::InvalidArgument;
}

double awkward(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

TEST(TraceFormat, RowsWithSameTimestampFormOneRecord) {
  const auto trace = parse_trace(
      "# rssiloc-trace v1\ntimestamp_s,anchor_id,rssi_dbm\n0,ap1,-40\n0,ap2,-50.5\n0,ap3,-61\n");
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].readings.size(), 3u);
  EXPECT_EQ(trace[0].readings.at("ap2").value, -50.5);
}

TEST(TraceFormat, EmptyInputIsEmptyTrace) {
  EXPECT_TRUE(parse_trace("").empty());
  EXPECT_TRUE(parse_trace("# rssiloc-trace v1\ntimestamp_s,anchor_id,rssi_dbm\n").empty());
}

TEST(TraceFormat, DuplicateReadingRejected) {
  EXPECT_EQ(code_of([] {
              parse_trace("# rssiloc-trace v1\ntimestamp_s,anchor_id,rssi_dbm\n0,a,-40\n60,a,-40\n0,a,-41\n");
            }),
            ErrorCode::MalformedTrace);
}

TEST(TraceFormat, EmptyScanSurvivesRoundtrip) {
  const std::vector<ScanRecord> trace{{0, {{"a", {-40}}}}, {60, {}}, {120, {{"b", {-70}}}}};
  const std::string text = serialize_trace(trace);
  EXPECT_NE(text.find("60,,\n"), std::string::npos);
  EXPECT_EQ(parse_trace(text), trace);
}

TEST(TraceFormat, HeaderParametersAreIgnoredByParser) {
  const std::vector<ScanRecord> trace{{0, {{"a", {-40}}}}};
  EXPECT_EQ(parse_trace(serialize_trace(trace, {{"seed", "7"}, {"alpha_true", "2.4"}})), trace);
}

TEST(TraceFormat, AcceptsCrlfLineEndings) {
  const auto trace = parse_trace("# rssiloc-trace v1\r\ntimestamp_s,anchor_id,rssi_dbm\r\n0,a,-40\r\n");
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].readings.at("a").value, -40.0);
}

TEST(Formats, RandomizedRoundtripsAreExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    AnchorMap anchors;
    std::vector<ScanRecord> trace;
    std::vector<TimedPosition> truth;
    for (int i = 0; i < 36; ++i) {
      anchors.emplace("ap" + std::to_string(i), Point2D{awkward(rng, -1e4, 1e4), awkward(rng, -1e4, 1e4)});
    }
    for (int s = 0; s < 20; ++s) {
      ScanRecord scan;
      scan.timestamp_s = s * 60.0 + awkward(rng, 0, 1e-3);
      for (const auto& [id, _] : anchors) {
        if (awkward(rng, 0, 1) < 0.7) scan.readings.emplace(id, PowerDbm{awkward(rng, -100, -20)});
      }
      trace.push_back(scan);
      truth.push_back({scan.timestamp_s, {awkward(rng, 0, 6000), awkward(rng, 0, 3000)}});
    }
    EXPECT_EQ(parse_anchors(serialize_anchors(anchors)), anchors);
    EXPECT_EQ(parse_trace(serialize_trace(trace)), trace);
    EXPECT_EQ(parse_ground_truth(serialize_ground_truth(truth)), truth);
  }
}

TEST(AnchorsFormat, ThirtySixAnchors) {
  std::string text = "# rssiloc-anchors v1\nanchor_id,x_cm,y_cm\n";
  for (int i = 0; i < 36; ++i) text += "n" + std::to_string(i) + "," + std::to_string(i * 100) + ",50\n";
  EXPECT_EQ(parse_anchors(text).size(), 36u);
}

TEST(AnchorsFormat, Rejections) {
  const std::string head = "# rssiloc-anchors v1\nanchor_id,x_cm,y_cm\n";
  EXPECT_EQ(code_of([&] { parse_anchors(head + "a,1,2\na,3,4\n"); }), ErrorCode::MalformedAnchors);
  EXPECT_EQ(code_of([&] { parse_anchors(head + "a,one,2\n"); }), ErrorCode::MalformedAnchors);
  EXPECT_EQ(code_of([&] { parse_anchors(head + ",1,2\n"); }), ErrorCode::MalformedAnchors);
  EXPECT_EQ(code_of([&] { parse_anchors(head + "a,1,2e999\n"); }), ErrorCode::MalformedAnchors);
  EXPECT_EQ(code_of([] { parse_anchors(""); }), ErrorCode::MalformedAnchors);
}

TEST(GroundTruthFormat, KeepsFileOrderAndRejectsRepeats) {
  const auto rows = parse_ground_truth("# rssiloc-groundtruth v1\ntimestamp_s,x_cm,y_cm\n60,1,2\n0,3,4\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].timestamp_s, 60.0);
  EXPECT_EQ(code_of([] { parse_ground_truth("# rssiloc-groundtruth v1\ntimestamp_s,x_cm,y_cm\n0,1,2\n0,1,2\n"); }),
            ErrorCode::MalformedGroundTruth);
}

TEST(MalformedCorpus, EveryFileYieldsItsDocumentedError) {
  const auto cases = testing::malformed_corpus(std::filesystem::path(RSSILOC_TEST_DATA_DIR) / "malformed");
  ASSERT_GE(cases.size(), 10u);
  for (const auto& c : cases) {
    EXPECT_EQ(testing::load_outcome(c.kind, c.file), c.expected_code) << c.file;
  }
}

TEST(TextIo, NumbersRoundTripAtFullPrecision) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double v = awkward(rng, -1e6, 1e6) * std::pow(10.0, awkward(rng, -12, 3));
    const std::string s = text_io::format_number(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(text_io::format_number(-40.0), "-40");
  EXPECT_EQ(text_io::format_fixed(62.4152, 2), "62.42");
}

TEST(TextIo, AtomicWriteLeavesNoTemporaryOnFailure) {
  const auto dir = std::filesystem::temp_directory_path() / "rssiloc_atomic_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  text_io::write_file_atomic(dir / "out.txt", "hello");
  EXPECT_EQ(text_io::read_file(dir / "out.txt"), "hello");
  EXPECT_EQ(code_of([&] { text_io::write_file_atomic(dir / "missing" / "out.txt", "x"); }), ErrorCode::IoFailure);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) files += entry.is_regular_file();
  EXPECT_EQ(files, 1u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace rssiloc
