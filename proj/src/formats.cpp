#include "rssiloc/formats.hpp"

#include <map>
#include <set>
#include <sstream>

#include "rssiloc/error.hpp"
#include "rssiloc/text_io.hpp"

namespace rssiloc {

namespace {

constexpr int kVersion = 1;
constexpr std::string_view kAnchorColumns = "anchor_id,x_cm,y_cm";
constexpr std::string_view kTraceColumns = "timestamp_s,anchor_id,rssi_dbm";
constexpr std::string_view kGroundTruthColumns = "timestamp_s,x_cm,y_cm";

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

}  // namespace

AnchorMap parse_anchors(std::string_view content, std::string_view source_name) {
  text_io::LineReader reader(content, source_name, ErrorCode::MalformedAnchors);
  reader.header("anchors", kVersion);
  reader.column_header(kAnchorColumns);
  AnchorMap anchors;
  std::string_view line;
  while (reader.next(line)) {
    const auto f = reader.fields(line, 3);
    if (!text_io::is_valid_anchor_id(f[0])) reader.fail("invalid anchor id '" + std::string(f[0]) + "'");
    const Point2D p{reader.number(f[1], "x_cm"), reader.number(f[2], "y_cm")};
    if (!anchors.emplace(std::string(f[0]), p).second) {
      reader.fail("duplicate anchor id '" + std::string(f[0]) + "'");
    }
  }
  return anchors;
}

std::string serialize_anchors(const AnchorMap& anchors, const HeaderParams& params) {
  std::ostringstream out;
  out << text_io::header_line("anchors", kVersion, params) << '\n' << kAnchorColumns << '\n';
  for (const auto& [id, p] : anchors) {
    out << id << ',' << text_io::format_number(p.x) << ',' << text_io::format_number(p.y) << '\n';
  }
  return out.str();
}

AnchorMap load_anchors(const std::filesystem::path& path) {
  return parse_anchors(text_io::read_file(path), path.string());
}

std::vector<ScanRecord> parse_trace(std::string_view content, std::string_view source_name) {
  if (is_blank(content)) return {};
  text_io::LineReader reader(content, source_name, ErrorCode::MalformedTrace);
  reader.header("trace", kVersion);
  reader.column_header(kTraceColumns);
  std::map<double, ScanRecord> by_time;
  std::string_view line;
  while (reader.next(line)) {
    const auto f = reader.fields(line, 3);
    const double t = reader.number(f[0], "timestamp_s");
    if (t < 0.0) reader.fail("timestamp_s must be non-negative");
    ScanRecord& record = by_time[t];
    record.timestamp_s = t;
    if (f[1].empty() && f[2].empty()) continue;
    if (!text_io::is_valid_anchor_id(f[1])) reader.fail("invalid anchor id '" + std::string(f[1]) + "'");
    const PowerDbm power{reader.number(f[2], "rssi_dbm")};
    if (!record.readings.emplace(std::string(f[1]), power).second) {
      reader.fail("duplicate reading for anchor '" + std::string(f[1]) + "' at t=" + std::string(f[0]));
    }
  }
  std::vector<ScanRecord> trace;
  trace.reserve(by_time.size());
  for (auto& [t, record] : by_time) trace.push_back(std::move(record));
  return trace;
}

std::string serialize_trace(const std::vector<ScanRecord>& trace, const HeaderParams& params) {
  std::ostringstream out;
  out << text_io::header_line("trace", kVersion, params) << '\n' << kTraceColumns << '\n';
  for (const auto& record : trace) {
    const std::string t = text_io::format_number(record.timestamp_s);
    if (record.readings.empty()) {
      out << t << ",,\n";
      continue;
    }
    for (const auto& [id, power] : record.readings) {
      out << t << ',' << id << ',' << text_io::format_number(power.value) << '\n';
    }
  }
  return out.str();
}

std::vector<ScanRecord> load_trace(const std::filesystem::path& path) {
  return parse_trace(text_io::read_file(path), path.string());
}

std::vector<TimedPosition> parse_ground_truth(std::string_view content, std::string_view source_name) {
  if (is_blank(content)) return {};
  text_io::LineReader reader(content, source_name, ErrorCode::MalformedGroundTruth);
  reader.header("groundtruth", kVersion);
  reader.column_header(kGroundTruthColumns);
  std::vector<TimedPosition> rows;
  std::set<double> seen;
  std::string_view line;
  while (reader.next(line)) {
    const auto f = reader.fields(line, 3);
    const double t = reader.number(f[0], "timestamp_s");
    if (t < 0.0) reader.fail("timestamp_s must be non-negative");
    if (!seen.insert(t).second) reader.fail("duplicate timestamp " + std::string(f[0]));
    rows.push_back({t, {reader.number(f[1], "x_cm"), reader.number(f[2], "y_cm")}});
  }
  return rows;
}

std::string serialize_ground_truth(const std::vector<TimedPosition>& rows, const HeaderParams& params) {
  std::ostringstream out;
  out << text_io::header_line("groundtruth", kVersion, params) << '\n' << kGroundTruthColumns << '\n';
  for (const auto& row : rows) {
    out << text_io::format_number(row.timestamp_s) << ',' << text_io::format_number(row.position.x) << ','
        << text_io::format_number(row.position.y) << '\n';
  }
  return out.str();
}

std::vector<TimedPosition> load_ground_truth(const std::filesystem::path& path) {
  return parse_ground_truth(text_io::read_file(path), path.string());
}

}  // namespace rssiloc
