#include "rssiloc/simulator.hpp"

#include <string>

#include "rssiloc/error.hpp"
#include "rssiloc/random.hpp"
#include "rssiloc/text_io.hpp"

namespace rssiloc {

namespace {

std::string describe(Point2D p) {
  return "(" + text_io::format_number(p.x) + ", " + text_io::format_number(p.y) + ")";
}

}  // namespace

void validate(const TestbedConfig& testbed) {
  if (!is_finite(testbed.floor_min) || !is_finite(testbed.floor_max) || testbed.floor_min.x >= testbed.floor_max.x ||
      testbed.floor_min.y >= testbed.floor_max.y) {
    throw Error(ErrorCode::MalformedConfig, "floor bounds must be finite with min < max");
  }
  if (testbed.anchors.size() < 2) throw Error(ErrorCode::MalformedConfig, "testbed needs at least 2 anchors");
  for (const auto& [id, p] : testbed.anchors) {
    if (!text_io::is_valid_anchor_id(id)) throw Error(ErrorCode::MalformedConfig, "invalid anchor id '" + id + "'");
    if (!is_finite(p) || !testbed.contains(p)) {
      throw Error(ErrorCode::MalformedConfig, "anchor " + id + " at " + describe(p) + " lies outside the floor");
    }
  }
}

void validate(const ChannelModel& channel) {
  if (!(channel.alpha_true.value > 0.0) || !std::isfinite(channel.alpha_true.value)) {
    throw Error(ErrorCode::MalformedConfig, "alpha_true must be positive");
  }
  if (!(channel.ref_distance.value > 0.0) || !std::isfinite(channel.ref_distance.value)) {
    throw Error(ErrorCode::MalformedConfig, "ref_distance_cm must be positive");
  }
  if (!std::isfinite(channel.ref_power.value) || !std::isfinite(channel.rssi_floor.value)) {
    throw Error(ErrorCode::MalformedConfig, "channel powers must be finite");
  }
  if (!(channel.shadow_sigma_db >= 0.0) || !std::isfinite(channel.shadow_sigma_db)) {
    throw Error(ErrorCode::MalformedConfig, "shadow_sigma_db must be >= 0");
  }
  if (!(channel.dropout_prob >= 0.0 && channel.dropout_prob <= 1.0)) {
    throw Error(ErrorCode::MalformedConfig, "dropout_prob must lie in [0, 1]");
  }
}

ScanRecord simulate_scan(Point2D position, const TestbedConfig& testbed, const ChannelModel& channel,
                         std::uint64_t draw_index) {
  if (!is_finite(position) || !testbed.contains(position)) {
    throw Error(ErrorCode::PositionOutOfBounds, "position " + describe(position) + " is outside the floor");
  }
  ScanRecord scan;
  for (const auto& [id, anchor] : testbed.anchors) {
    const double range = distance(position, anchor);
    if (range <= geometry_tolerance::kCoincidentCenters) {
      throw Error(ErrorCode::PositionOnAnchor, "position " + describe(position) + " coincides with anchor " + id);
    }
    const CounterStream stream(CounterStream::derive_key(channel.seed, draw_index, CounterStream::hash_id(id)));
    // counter 0: dropout; counters 2 and 3: shadowing (normal draw #1)
    const bool dropped = stream.uniform(0) < channel.dropout_prob;
    const double shadow = channel.shadow_sigma_db * stream.normal(1);
    if (dropped) continue;
    const double power =
        pathloss::power_at_distance(channel.ref_power, channel.ref_distance, DistanceCm{range}, channel.alpha_true)
            .value +
        shadow;
    if (power < channel.rssi_floor.value) continue;
    scan.readings.emplace(id, PowerDbm{power});
  }
  return scan;
}

GroundTruthTrace run_trajectory(const Trajectory& trajectory, const TestbedConfig& testbed,
                                const ChannelModel& channel, std::uint64_t first_draw_index, double start_time_s) {
  GroundTruthTrace trace;
  std::uint64_t k = 0;
  for (const Point2D& waypoint : trajectory.waypoints) {
    for (std::size_t s = 0; s < trajectory.scans_per_waypoint; ++s, ++k) {
      ScanRecord scan = simulate_scan(waypoint, testbed, channel, first_draw_index + k);
      scan.timestamp_s = start_time_s + kScanIntervalS * static_cast<double>(k);
      trace.records.push_back({std::move(scan), waypoint});
    }
  }
  return trace;
}

AnchorMap grid_anchors(Point2D floor_min, Point2D floor_max, std::size_t columns, std::size_t rows,
                       std::string_view prefix) {
  AnchorMap anchors;
  const std::size_t total = columns * rows;
  const std::size_t width = std::to_string(total).size();
  const double cell_w = (floor_max.x - floor_min.x) / static_cast<double>(columns);
  const double cell_h = (floor_max.y - floor_min.y) / static_cast<double>(rows);
  std::size_t index = 1;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns; ++c, ++index) {
      std::string number = std::to_string(index);
      number.insert(0, width - number.size(), '0');
      anchors.emplace(std::string(prefix) + number,
                      Point2D{floor_min.x + (static_cast<double>(c) + 0.5) * cell_w,
                              floor_min.y + (static_cast<double>(r) + 0.5) * cell_h});
    }
  }
  return anchors;
}

std::vector<Point2D> random_waypoints(const TestbedConfig& testbed, std::size_t count, std::uint64_t seed,
                                      double clearance_cm) {
  constexpr std::uint64_t kWaypointStream = 0x77617970ULL;
  constexpr std::uint64_t kMaxAttemptsPerPoint = 100000;
  const CounterStream stream(CounterStream::derive_key(seed, kWaypointStream));
  std::vector<Point2D> out;
  std::uint64_t counter = 0;
  while (out.size() < count) {
    bool placed = false;
    for (std::uint64_t attempt = 0; attempt < kMaxAttemptsPerPoint && !placed; ++attempt) {
      const Point2D p{testbed.floor_min.x + stream.uniform(counter++) * (testbed.floor_max.x - testbed.floor_min.x),
                      testbed.floor_min.y + stream.uniform(counter++) * (testbed.floor_max.y - testbed.floor_min.y)};
      bool clear = true;
      for (const auto& [id, anchor] : testbed.anchors) {
        if (distance(p, anchor) < clearance_cm) {
          clear = false;
          break;
        }
      }
      if (clear) {
        out.push_back(p);
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorCode::MalformedConfig, "cannot place waypoints with the requested clearance");
  }
  return out;
}

}  // namespace rssiloc
