#pragma once

#include <map>
#include <string>
#include <vector>

#include "rssiloc/geometry.hpp"
#include "rssiloc/pathloss.hpp"

namespace rssiloc {

/// Fixed node identifier; doubles as the SSID in scan traces.
using AnchorId = std::string;

/// Fixed node coordinates keyed by id. Ordered so iteration is deterministic.
using AnchorMap = std::map<AnchorId, Point2D>;

/// One RSSI snapshot taken by the mobile node.
struct ScanRecord {
  double timestamp_s = 0.0;
  std::map<AnchorId, PowerDbm> readings;

  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

struct TimedPosition {
  double timestamp_s = 0.0;
  Point2D position;

  friend bool operator==(const TimedPosition&, const TimedPosition&) = default;
};

}  // namespace rssiloc
