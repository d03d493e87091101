#include "rssiloc/bubble_map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "rssiloc/error.hpp"
#include "rssiloc/text_io.hpp"

namespace rssiloc {

namespace {

using text_io::format_fixed;

struct Rgb {
  int r, g, b;
};

// weak -> strong
constexpr std::array<Rgb, 3> kPalette{{{44, 123, 182}, {255, 255, 191}, {215, 25, 28}}};

std::string color_for(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * static_cast<double>(kPalette.size() - 1);
  const auto lo = std::min(static_cast<std::size_t>(scaled), kPalette.size() - 2);
  const double f = scaled - static_cast<double>(lo);
  auto lerp = [f](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
  const Rgb c{lerp(kPalette[lo].r, kPalette[lo + 1].r), lerp(kPalette[lo].g, kPalette[lo + 1].g),
              lerp(kPalette[lo].b, kPalette[lo + 1].b)};
  std::ostringstream out;
  out << "rgb(" << c.r << ',' << c.g << ',' << c.b << ')';
  return out.str();
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// cm -> px with y pointing up in floor coordinates.
struct Viewport {
  double min_x, max_y, scale, margin;

  double px(double x) const { return margin + (x - min_x) * scale; }
  double py(double y) const { return margin + (max_y - y) * scale; }
};

}  // namespace

std::vector<BubbleDatum> compute_bubbles(const std::vector<ScanRecord>& trace, const AnchorMap& anchors) {
  std::map<AnchorId, std::pair<double, std::size_t>> sums;
  for (const auto& scan : trace) {
    for (const auto& [id, power] : scan.readings) {
      if (!anchors.contains(id)) {
        throw Error(ErrorCode::UnknownAnchorInTrace, "trace references anchor '" + id + "' missing from the anchor map");
      }
      auto& [sum, count] = sums[id];
      sum += power.value;
      ++count;
    }
  }
  if (sums.empty()) throw Error(ErrorCode::EmptyTrace, "trace has no readings to map");
  std::vector<BubbleDatum> out;
  for (const auto& [id, acc] : sums) {
    out.push_back({id, anchors.at(id), PowerDbm{acc.first / static_cast<double>(acc.second)}, acc.second});
  }
  return out;
}

double bubble_radius(double mean, double weakest, double strongest, const BubbleMapStyle& style) {
  if (!(strongest > weakest)) return 0.5 * (style.min_radius_px + style.max_radius_px);
  const double t = std::clamp((mean - weakest) / (strongest - weakest), 0.0, 1.0);
  return style.min_radius_px + t * (style.max_radius_px - style.min_radius_px);
}

std::string render_bubble_svg(const std::vector<BubbleDatum>& bubbles, const AnchorMap& anchors,
                              std::optional<Point2D> robot, const BubbleMapStyle& style) {
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  auto extend = [&](Point2D p) {
    if (first) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
      first = false;
      return;
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const auto& [id, p] : anchors) extend(p);
  if (robot) extend(*robot);
  const double span_x = std::max(max_x - min_x, 1.0);
  const double span_y = std::max(max_y - min_y, 1.0);
  const double margin = style.margin_px + style.max_radius_px;
  const double scale = (style.width_px - 2.0 * margin) / span_x;
  const Viewport vp{min_x, max_y, scale, margin};
  const double height_px = span_y * scale + 2.0 * margin + 40.0;

  double weakest = 0.0, strongest = 0.0;
  if (!bubbles.empty()) {
    const auto [lo, hi] = std::minmax_element(bubbles.begin(), bubbles.end(), [](const auto& a, const auto& b) {
      return a.mean_rssi.value < b.mean_rssi.value;
    });
    weakest = lo->mean_rssi.value;
    strongest = hi->mean_rssi.value;
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(style.width_px, 0) << "\" height=\""
      << format_fixed(height_px, 0) << "\" viewBox=\"0 0 " << format_fixed(style.width_px, 0) << ' '
      << format_fixed(height_px, 0) << "\">\n";
  out << "  <title>Mean RSSI per anchor</title>\n";
  out << "  <defs>\n    <linearGradient id=\"rssi\" x1=\"0\" x2=\"1\" y1=\"0\" y2=\"0\">\n";
  for (std::size_t i = 0; i < kPalette.size(); ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(kPalette.size() - 1);
    out << "      <stop offset=\"" << format_fixed(t, 2) << "\" stop-color=\"" << color_for(t) << "\"/>\n";
  }
  out << "    </linearGradient>\n  </defs>\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::map<AnchorId, const BubbleDatum*> heard;
  for (const auto& b : bubbles) heard[b.anchor] = &b;
  for (const auto& [id, p] : anchors) {
    if (heard.contains(id)) continue;
    out << "  <rect class=\"unheard\" x=\"" << format_fixed(vp.px(p.x) - 3.0, 2) << "\" y=\""
        << format_fixed(vp.py(p.y) - 3.0, 2) << "\" width=\"6\" height=\"6\" fill=\"#999999\"><title>"
        << escape_xml(id) << " (not heard)</title></rect>\n";
  }
  // Larger bubbles first so small ones stay visible on top.
  std::vector<const BubbleDatum*> order;
  for (const auto& b : bubbles) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->mean_rssi.value > b->mean_rssi.value; });
  for (const auto* b : order) {
    const double r = bubble_radius(b->mean_rssi.value, weakest, strongest, style);
    const double t = strongest > weakest ? (b->mean_rssi.value - weakest) / (strongest - weakest) : 0.5;
    out << "  <circle class=\"anchor\" data-anchor=\"" << escape_xml(b->anchor) << "\" cx=\""
        << format_fixed(vp.px(b->position.x), 2) << "\" cy=\"" << format_fixed(vp.py(b->position.y), 2) << "\" r=\""
        << format_fixed(r, 3) << "\" fill=\"" << color_for(t)
        << "\" fill-opacity=\"0.8\" stroke=\"#333333\" stroke-width=\"1\"><title>" << escape_xml(b->anchor) << ": "
        << format_fixed(b->mean_rssi.value, 2) << " dBm</title></circle>\n";
  }
  if (robot) {
    const double cx = vp.px(robot->x), cy = vp.py(robot->y), s = 8.0;
    out << "  <polygon class=\"robot\" points=\"" << format_fixed(cx, 2) << ',' << format_fixed(cy - s, 2) << ' '
        << format_fixed(cx + s, 2) << ',' << format_fixed(cy, 2) << ' ' << format_fixed(cx, 2) << ','
        << format_fixed(cy + s, 2) << ' ' << format_fixed(cx - s, 2) << ',' << format_fixed(cy, 2)
        << "\" fill=\"#1a9641\" stroke=\"#000000\"><title>robot</title></polygon>\n";
  }
  const double legend_y = height_px - 30.0;
  out << "  <rect x=\"" << format_fixed(style.margin_px, 0) << "\" y=\"" << format_fixed(legend_y, 0)
      << "\" width=\"200\" height=\"12\" fill=\"url(#rssi)\"/>\n";
  out << "  <text x=\"" << format_fixed(style.margin_px, 0) << "\" y=\"" << format_fixed(legend_y + 26.0, 0)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_fixed(weakest, 1) << " dBm</text>\n";
  out << "  <text x=\"" << format_fixed(style.margin_px + 200.0, 0) << "\" y=\"" << format_fixed(legend_y + 26.0, 0)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << format_fixed(strongest, 1)
      << " dBm</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string serialize_bubble_table(const std::vector<BubbleDatum>& bubbles, const HeaderParams& params) {
  std::ostringstream out;
  out << text_io::header_line("bubbles", 1, params) << '\n' << "anchor_id,x_cm,y_cm,mean_rssi_dbm\n";
  for (const auto& b : bubbles) {
    out << b.anchor << ',' << text_io::format_number(b.position.x) << ',' << text_io::format_number(b.position.y)
        << ',' << text_io::format_number(b.mean_rssi.value) << '\n';
  }
  return out.str();
}

void emit_bubble_map(const std::vector<ScanRecord>& trace, const AnchorMap& anchors, std::optional<Point2D> robot,
                     const std::filesystem::path& svg_path, const std::filesystem::path& table_path,
                     const BubbleMapStyle& style) {
  const auto bubbles = compute_bubbles(trace, anchors);
  const std::string svg = render_bubble_svg(bubbles, anchors, robot, style);
  const std::string table = serialize_bubble_table(bubbles);
  text_io::write_file_atomic(svg_path, svg);
  text_io::write_file_atomic(table_path, table);
}

}  // namespace rssiloc
