#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "rssiloc/geometry.hpp"
#include "rssiloc/pathloss.hpp"
#include "rssiloc/scan.hpp"

namespace rssiloc {

struct TestbedConfig {
  AnchorMap anchors;
  Point2D floor_min;
  Point2D floor_max;

  bool contains(Point2D p) const {
    return p.x >= floor_min.x && p.x <= floor_max.x && p.y >= floor_min.y && p.y <= floor_max.y;
  }
};

/// Log-distance channel with i.i.d. Gaussian shadowing and random dropout.
/// The defaults are plausible indoor values, not measured ones.
struct ChannelModel {
  PathLossExponent alpha_true{2.4};
  PowerDbm ref_power{-40.0};
  DistanceCm ref_distance{100.0};
  double shadow_sigma_db = 3.0;
  double dropout_prob = 0.05;
  PowerDbm rssi_floor{-95.0};
  std::uint64_t seed = 1;
};

struct Trajectory {
  std::vector<Point2D> waypoints;
  std::size_t scans_per_waypoint = 1;
};

struct TraceRecord {
  ScanRecord scan;
  Point2D true_position;
};

struct GroundTruthTrace {
  std::vector<TraceRecord> records;
};

/// Seconds between consecutive scans.
inline constexpr double kScanIntervalS = 60.0;

/// Throws MalformedConfig when the testbed or channel break their invariants.
void validate(const TestbedConfig& testbed);
void validate(const ChannelModel& channel);

/// One scan at `position`. The shadowing and dropout draws for an anchor
/// depend only on (seed, draw_index, anchor id).
///
/// Throws PositionOutOfBounds, PositionOnAnchor.
ScanRecord simulate_scan(Point2D position, const TestbedConfig& testbed, const ChannelModel& channel,
                         std::uint64_t draw_index);

/// scans_per_waypoint scans per waypoint, in waypoint order; scan k uses
/// draw index first_draw_index + k and timestamp start_time_s + 60 k.
GroundTruthTrace run_trajectory(const Trajectory& trajectory, const TestbedConfig& testbed,
                                const ChannelModel& channel, std::uint64_t first_draw_index = 0,
                                double start_time_s = 0.0);

/// Evenly spaced anchors, one at the center of each cell of a
/// columns x rows grid over the floor. Ids are `prefix` + 1-based index,
/// zero padded, numbered row by row from the lowest y.
AnchorMap grid_anchors(Point2D floor_min, Point2D floor_max, std::size_t columns, std::size_t rows,
                       std::string_view prefix = "ap");

/// Uniform random floor positions at least `clearance_cm` from every
/// anchor. Deterministic in `seed`.
std::vector<Point2D> random_waypoints(const TestbedConfig& testbed, std::size_t count, std::uint64_t seed,
                                      double clearance_cm);

/// Everything the `simulate` command needs, as read from a testbed config
/// file.
struct SimulationConfig {
  TestbedConfig testbed;
  ChannelModel channel;
  Trajectory trajectory;
  std::uint64_t first_draw_index = 0;
  double start_time_s = 0.0;
};

SimulationConfig parse_simulation_config(std::string_view json_text, std::string_view source_name = "<config>");
SimulationConfig load_simulation_config(const std::filesystem::path& path);

}  // namespace rssiloc
