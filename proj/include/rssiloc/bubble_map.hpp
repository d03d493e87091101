#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rssiloc/formats.hpp"
#include "rssiloc/scan.hpp"

namespace rssiloc {

/// Mean RSSI the mobile node observed from one anchor over a trace.
struct BubbleDatum {
  AnchorId anchor;
  Point2D position;
  PowerDbm mean_rssi;
  std::size_t readings = 0;
};

struct BubbleMapStyle {
  double width_px = 1000.0;
  double margin_px = 60.0;
  double min_radius_px = 6.0;
  double max_radius_px = 30.0;
};

/// One datum per anchor heard in `trace`, ordered by anchor id.
/// Throws EmptyTrace when the trace holds no readings and
/// UnknownAnchorInTrace when a reading names an anchor missing from
/// `anchors`.
std::vector<BubbleDatum> compute_bubbles(const std::vector<ScanRecord>& trace, const AnchorMap& anchors);

/// Affine map of `mean` from [weakest, strongest] onto
/// [min_radius_px, max_radius_px]. A zero-width range yields the midpoint.
double bubble_radius(double mean, double weakest, double strongest, const BubbleMapStyle& style);

/// Standalone SVG. Heard anchors are filled circles sized and colored by
/// mean RSSI, unheard anchors small grey squares, the robot a green diamond.
std::string render_bubble_svg(const std::vector<BubbleDatum>& bubbles, const AnchorMap& anchors,
                              std::optional<Point2D> robot, const BubbleMapStyle& style = {});

std::string serialize_bubble_table(const std::vector<BubbleDatum>& bubbles, const HeaderParams& params = {});

/// compute_bubbles, then writes the SVG and the companion table.
void emit_bubble_map(const std::vector<ScanRecord>& trace, const AnchorMap& anchors, std::optional<Point2D> robot,
                     const std::filesystem::path& svg_path, const std::filesystem::path& table_path,
                     const BubbleMapStyle& style = {});

}  // namespace rssiloc
