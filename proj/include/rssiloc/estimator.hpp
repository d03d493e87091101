#pragma once

#include <cstddef>
#include <span>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rssiloc/calibration.hpp"
#include "rssiloc/error.hpp"
#include "rssiloc/geometry.hpp"
#include "rssiloc/pathloss.hpp"
#include "rssiloc/scan.hpp"

namespace rssiloc {

inline constexpr std::size_t kDefaultEstimatorAnchors = 4;

enum class TieBreak {
  /// Equal candidates resolve to the smaller y, then the smaller x.
  LowerYThenX,
};

/// How a pair's two intersection points are told apart using the other
/// ranged anchors.
enum class CandidateRule {
  /// Smallest summed |distance - estimated range| over the other anchors.
  RangeResidual,
  /// Smallest summed distance to the other anchors' positions.
  AnchorDistance,
};

struct EstimatorConfig {
  std::size_t n = kDefaultEstimatorAnchors;
  std::size_t min_pairs = 1;
  TieBreak tie_break = TieBreak::LowerYThenX;
  CandidateRule candidate_rule = CandidateRule::RangeResidual;
};

std::string_view to_string(CandidateRule rule);
/// Accepts "range_residual" and "anchor_distance".
std::optional<CandidateRule> parse_candidate_rule(std::string_view text);

/// An anchor with its estimated range.
struct RangeTarget {
  AnchorId anchor;
  Point2D position;
  DistanceCm distance;
};

struct PairPoint {
  AnchorId first;
  AnchorId second;
  IntersectionKind kind = IntersectionKind::NoIntersection;
  Point2D point;
};

struct SkippedPair {
  AnchorId first;
  AnchorId second;
  ErrorCode reason = ErrorCode::CoincidentCenters;
};

struct UsedAnchor {
  AnchorId anchor;
  PowerDbm power;
  DistanceCm distance;
};

struct PositionEstimate {
  Point2D position;
  std::vector<PairPoint> per_pair_points;
  std::vector<UsedAnchor> used_anchors;
  std::vector<SkippedPair> skipped_pairs;
  /// Scan readings from anchors missing in the anchor map.
  std::size_t ignored_readings = 0;
};

/// The `n` strongest readings from anchors present in both `scan` and
/// `anchors`, strongest first, equal powers ordered by id. Returns fewer than
/// `n` entries when fewer qualify.
std::vector<std::pair<AnchorId, PowerDbm>> select_top_n(const ScanRecord& scan, const AnchorMap& anchors,
                                                        std::size_t n);

/// Range to an anchor heard at `power`: one log-distance inversion per
/// database entry, averaged. Throws EmptyDatabase, NonPositiveAlpha.
DistanceCm estimate_anchor_distance(PowerDbm power, const CalibrationDatabase& db);

/// Intersects every unordered pair of range circles, keeps the candidate
/// nearer the remaining anchors, and averages the kept points. Pairs with
/// coincident centers are skipped.
///
/// Throws TooFewTargets (< 2 targets) and TooFewUsablePairs.
PositionEstimate multilaterate(std::span<const RangeTarget> targets, const EstimatorConfig& config = {});

/// Full online pipeline for one scan: select_top_n, estimate_anchor_distance
/// per selected anchor, multilaterate.
PositionEstimate locate(const ScanRecord& scan, const CalibrationDatabase& db, const AnchorMap& anchors,
                        const EstimatorConfig& config = {});

}  // namespace rssiloc
