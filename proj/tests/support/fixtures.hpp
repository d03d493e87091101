#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "rssiloc/scan.hpp"

namespace rssiloc::testing {

/// Noiseless log-distance scan, computed directly from the model formula.
inline ScanRecord noiseless_scan(Point2D at, const AnchorMap& anchors, double alpha, double ref_power = -40.0,
                                 double ref_distance = 100.0, double timestamp = 0.0) {
  ScanRecord scan;
  scan.timestamp_s = timestamp;
  for (const auto& [id, p] : anchors) {
    const double r = std::hypot(at.x - p.x, at.y - p.y);
    scan.readings.emplace(id, PowerDbm{ref_power - 10.0 * alpha * std::log10(r / ref_distance)});
  }
  return scan;
}

/// `count` anchors uniformly on a width x height floor, ids a00, a01, ...
inline AnchorMap random_anchor_layout(std::mt19937_64& rng, std::size_t count, double width, double height) {
  std::uniform_real_distribution<double> x(0.0, width), y(0.0, height);
  AnchorMap anchors;
  for (std::size_t i = 0; i < count; ++i) {
    std::string id = "a" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    anchors.emplace(id, Point2D{x(rng), y(rng)});
  }
  return anchors;
}

/// Uniform floor point at least `clearance` from every anchor.
inline Point2D random_clear_point(std::mt19937_64& rng, const AnchorMap& anchors, double width, double height,
                                  double clearance) {
  std::uniform_real_distribution<double> x(0.0, width), y(0.0, height);
  while (true) {
    const Point2D p{x(rng), y(rng)};
    bool ok = true;
    for (const auto& [id, a] : anchors) ok = ok && std::hypot(p.x - a.x, p.y - a.y) >= clearance;
    if (ok) return p;
  }
}

}  // namespace rssiloc::testing
