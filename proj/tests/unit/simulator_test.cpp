#include "rssiloc/simulator.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "rssiloc/error.hpp"
#include "rssiloc/random.hpp"

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

TestbedConfig line_testbed() {
  TestbedConfig t;
  t.floor_min = {-100, -100};
  t.floor_max = {2000, 100};
  t.anchors = {{"near", {100, 0}}, {"far", {1000, 0}}};
  return t;
}

ChannelModel quiet_channel() {
  ChannelModel ch;
  ch.alpha_true = {2.0};
  ch.shadow_sigma_db = 0.0;
  ch.dropout_prob = 0.0;
  ch.rssi_floor = {-200};
  return ch;
}

TEST(SimulateScan, NoiselessForwardModel) {
  const auto scan = simulate_scan({0, 0}, line_testbed(), quiet_channel(), 0);
  ASSERT_EQ(scan.readings.size(), 2u);
  EXPECT_NEAR(scan.readings.at("near").value, -40.0, 1e-12);
  EXPECT_NEAR(scan.readings.at("far").value, -60.0, 1e-12);
}

TEST(SimulateScan, FullDropoutIsEmpty) {
  auto ch = quiet_channel();
  ch.dropout_prob = 1.0;
  EXPECT_TRUE(simulate_scan({0, 0}, line_testbed(), ch, 3).readings.empty());
}

TEST(SimulateScan, RssiFloorDropsWeakAnchors) {
  auto ch = quiet_channel();
  ch.rssi_floor = {-50};
  const auto scan = simulate_scan({0, 0}, line_testbed(), ch, 0);
  EXPECT_TRUE(scan.readings.contains("near"));
  EXPECT_FALSE(scan.readings.contains("far"));
}

TEST(SimulateScan, DeterministicPerDrawIndex) {
  ChannelModel ch;
  ch.seed = 99;
  const auto t = line_testbed();
  EXPECT_EQ(simulate_scan({0, 0}, t, ch, 5), simulate_scan({0, 0}, t, ch, 5));
  EXPECT_NE(simulate_scan({0, 0}, t, ch, 5), simulate_scan({0, 0}, t, ch, 6));
}

TEST(SimulateScan, AddingAnchorDoesNotPerturbOthers) {
  ChannelModel ch;
  ch.seed = 3;
  ch.dropout_prob = 0.0;
  auto t = line_testbed();
  const auto before = simulate_scan({0, 50}, t, ch, 17);
  t.anchors.emplace("extra", Point2D{500, 50});
  const auto after = simulate_scan({0, 50}, t, ch, 17);
  EXPECT_EQ(after.readings.at("near"), before.readings.at("near"));
  EXPECT_EQ(after.readings.at("far"), before.readings.at("far"));
}

TEST(SimulateScan, Errors) {
  const auto t = line_testbed();
  EXPECT_EQ(code_of([&] { simulate_scan({5000, 0}, t, quiet_channel(), 0); }), ErrorCode::PositionOutOfBounds);
  EXPECT_EQ(code_of([&] { simulate_scan({100, 0}, t, quiet_channel(), 0); }), ErrorCode::PositionOnAnchor);
}

TEST(SimulateScan, ShadowingStatistics) {
  auto ch = quiet_channel();
  ch.shadow_sigma_db = 4.0;
  const auto t = line_testbed();
  constexpr int kDraws = 20000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double dev = simulate_scan({0, 0}, t, ch, static_cast<std::uint64_t>(i)).readings.at("near").value + 40.0;
    sum += dev;
    sum_sq += dev * dev;
  }
  const double mean = sum / kDraws;
  const double sd = std::sqrt(sum_sq / kDraws - mean * mean);
  EXPECT_NEAR(mean, 0.0, 0.15);
  EXPECT_NEAR(sd, 4.0, 0.15);
}

TEST(SimulateScan, DropoutRate) {
  auto ch = quiet_channel();
  ch.dropout_prob = 0.3;
  const auto t = line_testbed();
  constexpr int kDraws = 10000;
  int missing = 0;
  for (int i = 0; i < kDraws; ++i) {
    if (!simulate_scan({0, 0}, t, ch, static_cast<std::uint64_t>(i)).readings.contains("near")) ++missing;
  }
  EXPECT_NEAR(static_cast<double>(missing) / kDraws, 0.3, 0.02);
}

TEST(RunTrajectory, LengthsAndTimestamps) {
  Trajectory one{{{0, 0}}, 1};
  EXPECT_EQ(run_trajectory(one, line_testbed(), quiet_channel()).records.size(), 1u);

  Trajectory three{{{0, 0}, {500, 50}, {1500, -50}}, 2};
  const auto trace = run_trajectory(three, line_testbed(), quiet_channel());
  ASSERT_EQ(trace.records.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(trace.records[i].scan.timestamp_s, 60.0 * static_cast<double>(i));
    EXPECT_EQ(trace.records[i].true_position, three.waypoints[i / 2]);
  }
}

TEST(RunTrajectory, DeterministicAcrossRuns) {
  ChannelModel ch;
  ch.seed = 42;
  Trajectory traj{{{0, 0}, {500, 50}, {1500, -50}}, 3};
  const auto a = run_trajectory(traj, line_testbed(), ch);
  const auto b = run_trajectory(traj, line_testbed(), ch);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].scan, b.records[i].scan);
}

TEST(RunTrajectory, ZeroNoiseInvertsToExactDistances) {
  auto t = line_testbed();
  ChannelModel ch = quiet_channel();
  ch.alpha_true = {3.1};
  const auto trace = run_trajectory({{{0, 37}}, 1}, t, ch);
  for (const auto& [id, power] : trace.records[0].scan.readings) {
    const double r = pathloss::distance_from_power(power, ch.ref_power, ch.ref_distance, ch.alpha_true).value;
    EXPECT_NEAR(r, distance({0, 37}, t.anchors.at(id)), 1e-9 * r);
  }
}

TEST(GridAnchors, CellCentersAndIds) {
  const auto grid = grid_anchors({0, 0}, {6000, 3000}, 9, 4);
  EXPECT_EQ(grid.size(), 36u);
  EXPECT_EQ(grid.at("ap01"), (Point2D{6000.0 / 18.0, 375.0}));
  EXPECT_TRUE(grid.contains("ap36"));
}

TEST(RandomWaypoints, RespectClearanceAndSeed) {
  TestbedConfig t;
  t.floor_min = {0, 0};
  t.floor_max = {6000, 3000};
  t.anchors = grid_anchors(t.floor_min, t.floor_max, 9, 4);
  const auto a = random_waypoints(t, 100, 5, 50);
  EXPECT_EQ(a, random_waypoints(t, 100, 5, 50));
  EXPECT_NE(a, random_waypoints(t, 100, 6, 50));
  for (const auto& p : a) {
    EXPECT_TRUE(t.contains(p));
    for (const auto& [id, anchor] : t.anchors) EXPECT_GE(distance(p, anchor), 50.0);
  }
}

TEST(CounterStream, UniformRangeAndNormalMoments) {
  const CounterStream s(CounterStream::derive_key(1, 2, 3));
  double sum = 0, sum_sq = 0;
  for (std::uint64_t i = 0; i < 50000; ++i) {
    const double u = s.uniform(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = s.normal(i);
    sum += z;
    sum_sq += z * z;
  }
  EXPECT_NEAR(sum / 50000, 0.0, 0.03);
  EXPECT_NEAR(sum_sq / 50000, 1.0, 0.03);
}

TEST(SimulationConfig, ParsesInlineAnchorsAndDefaults) {
  const auto config = parse_simulation_config(R"({
    "format": "rssiloc-testbed", "version": 1,
    "floor": {"min": {"x_cm": 0, "y_cm": 0}, "max": {"x_cm": 1000, "y_cm": 500}},
    "anchors": [{"id": "a", "x_cm": 10, "y_cm": 10}, {"id": "b", "x_cm": 900, "y_cm": 400}],
    "channel": {"seed": 9, "shadow_sigma_db": 0},
    "trajectory": {"waypoints": [{"x_cm": 500, "y_cm": 250}], "scans_per_waypoint": 3}
  })");
  EXPECT_EQ(config.testbed.anchors.size(), 2u);
  EXPECT_EQ(config.channel.seed, 9u);
  EXPECT_EQ(config.channel.shadow_sigma_db, 0.0);
  EXPECT_EQ(config.channel.alpha_true.value, 2.4);
  EXPECT_EQ(config.trajectory.scans_per_waypoint, 3u);
}

TEST(SimulationConfig, GridAndRandomWaypoints) {
  const auto config = parse_simulation_config(R"({
    "format": "rssiloc-testbed", "version": 1,
    "floor": {"min": {"x_cm": 0, "y_cm": 0}, "max": {"x_cm": 6000, "y_cm": 3000}},
    "anchor_grid": {"columns": 9, "rows": 4},
    "trajectory": {"random_waypoints": {"count": 25, "seed": 3}}
  })");
  EXPECT_EQ(config.testbed.anchors.size(), 36u);
  EXPECT_EQ(config.trajectory.waypoints.size(), 25u);
}

TEST(SimulationConfig, Rejections) {
  const std::string floor = R"("floor": {"min": {"x_cm": 0, "y_cm": 0}, "max": {"x_cm": 100, "y_cm": 100}})";
  const std::string anchors = R"("anchors": [{"id": "a", "x_cm": 10, "y_cm": 10}, {"id": "b", "x_cm": 90, "y_cm": 90}])";
  const std::string traj = R"("trajectory": {"waypoints": [{"x_cm": 50, "y_cm": 40}]})";
  auto doc = [&](const std::string& extra) {
    return R"({"format": "rssiloc-testbed", "version": 1, )" + floor + ", " + anchors + ", " + traj + extra + "}";
  };
  EXPECT_NO_THROW(parse_simulation_config(doc("")));
  EXPECT_EQ(code_of([&] { parse_simulation_config("{not json"); }), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of([&] { parse_simulation_config(doc(R"(, "bogus": 1)")); }), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of([&] { parse_simulation_config(doc(R"(, "channel": {"dropout_prob": 1.5})")); }),
            ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of([&] { parse_simulation_config(doc(R"(, "channel": {"shadow_sigma_db": -1})")); }),
            ErrorCode::MalformedConfig);
  const std::string outside = R"({"format": "rssiloc-testbed", "version": 1, )" + floor +
                              R"(, "anchors": [{"id": "a", "x_cm": 10, "y_cm": 10}, {"id": "b", "x_cm": 190, "y_cm": 90}], )" +
                              traj + "}";
  EXPECT_EQ(code_of([&] { parse_simulation_config(outside); }), ErrorCode::MalformedConfig);
}

}  // namespace
}  // namespace rssiloc
