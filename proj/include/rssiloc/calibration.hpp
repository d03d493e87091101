#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rssiloc/geometry.hpp"
#include "rssiloc/pathloss.hpp"
#include "rssiloc/scan.hpp"

namespace rssiloc {

inline constexpr std::size_t kDefaultCalibrationAnchors = 4;

/// One reference reading: power heard from `anchor` at a known position, and
/// the true distance between the two.
struct CalibrationEntry {
  AnchorId anchor;
  PowerDbm power;
  DistanceCm distance;
  Point2D source_position;

  friend bool operator==(const CalibrationEntry&, const CalibrationEntry&) = default;
};

/// Output of calibrating at a single known position.
struct CalibrationBatch {
  std::size_t m = 0;
  std::vector<CalibrationEntry> entries;
  std::vector<PathLossExponent> alpha_samples;
  /// Pairs whose exponent was undefined (equal distances).
  std::size_t skipped_pairs = 0;
  /// Pairs discarded by the plausibility filter.
  std::size_t filtered_pairs = 0;
};

struct CalibrationDatabase {
  std::size_t m = kDefaultCalibrationAnchors;
  PathLossExponent alpha_hat;
  std::vector<PathLossExponent> alpha_samples;
  std::vector<CalibrationEntry> entries;
  std::size_t skipped_pairs = 0;

  friend bool operator==(const CalibrationDatabase&, const CalibrationDatabase&) = default;
};

/// Picks the `m` strongest readings of `scan` among anchors known to
/// `anchors` (equal powers ordered by id), records one entry per selected
/// anchor and one exponent sample per unordered pair.
///
/// Throws InsufficientAnchors when fewer than `m` usable readings exist,
/// AnchorAtCalibrationPoint when `known_position` sits on an anchor, and
/// InvalidArgument for m < 2.
CalibrationBatch calibrate_at(Point2D known_position, const ScanRecord& scan, const AnchorMap& anchors,
                              std::size_t m = kDefaultCalibrationAnchors,
                              const pathloss::AlphaFilter& filter = {});

/// Pools the batches: concatenated entries, alpha_hat = mean of every
/// sample. Throws NoAlphaSamples when no batch produced a sample.
CalibrationDatabase merge_calibrations(std::span<const CalibrationBatch> batches);

std::string serialize_database(const CalibrationDatabase& db);
CalibrationDatabase parse_database(std::string_view content, std::string_view source_name = "<database>");

void save_database(const CalibrationDatabase& db, const std::filesystem::path& destination);
CalibrationDatabase load_database(const std::filesystem::path& source);

}  // namespace rssiloc
