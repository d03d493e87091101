#pragma once

// Anchors, scan traces and ground truth as versioned comma-separated text.
//
//   # rssiloc-anchors v1        anchor_id,x_cm,y_cm
//   # rssiloc-trace v1          timestamp_s,anchor_id,rssi_dbm
//   # rssiloc-groundtruth v1    timestamp_s,x_cm,y_cm
//
// A header line may carry extra " key=value" parameters; parsers ignore
// them. A trace row with empty anchor_id and rssi_dbm records a scan that
// heard nothing.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rssiloc/scan.hpp"

namespace rssiloc {

using HeaderParams = std::vector<std::pair<std::string, std::string>>;

AnchorMap parse_anchors(std::string_view content, std::string_view source_name = "<anchors>");
std::string serialize_anchors(const AnchorMap& anchors, const HeaderParams& params = {});
AnchorMap load_anchors(const std::filesystem::path& path);

/// Records in ascending timestamp order. Rows sharing a timestamp form one
/// record. Throws MalformedTrace on duplicate (timestamp, anchor) rows.
std::vector<ScanRecord> parse_trace(std::string_view content, std::string_view source_name = "<trace>");
std::string serialize_trace(const std::vector<ScanRecord>& trace, const HeaderParams& params = {});
std::vector<ScanRecord> load_trace(const std::filesystem::path& path);

/// Rows in file order. Throws MalformedGroundTruth on a repeated timestamp.
std::vector<TimedPosition> parse_ground_truth(std::string_view content,
                                              std::string_view source_name = "<ground truth>");
std::string serialize_ground_truth(const std::vector<TimedPosition>& rows, const HeaderParams& params = {});
std::vector<TimedPosition> load_ground_truth(const std::filesystem::path& path);

}  // namespace rssiloc
