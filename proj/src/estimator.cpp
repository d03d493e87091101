#include "rssiloc/estimator.hpp"

#include <algorithm>

#include "rssiloc/error.hpp"

namespace rssiloc {

std::string_view to_string(CandidateRule rule) {
  switch (rule) {
    case CandidateRule::RangeResidual:
      return "range_residual";
    case CandidateRule::AnchorDistance:
      return "anchor_distance";
  }
  return "unknown";
}

std::optional<CandidateRule> parse_candidate_rule(std::string_view text) {
  if (text == "range_residual") return CandidateRule::RangeResidual;
  if (text == "anchor_distance") return CandidateRule::AnchorDistance;
  return std::nullopt;
}

std::vector<std::pair<AnchorId, PowerDbm>> select_top_n(const ScanRecord& scan, const AnchorMap& anchors,
                                                        std::size_t n) {
  std::vector<std::pair<AnchorId, PowerDbm>> known;
  for (const auto& [id, power] : scan.readings) {
    if (anchors.contains(id)) known.emplace_back(id, power);
  }
  std::stable_sort(known.begin(), known.end(), [](const auto& a, const auto& b) {
    if (a.second.value != b.second.value) return a.second.value > b.second.value;
    return a.first < b.first;
  });
  if (known.size() > n) known.resize(n);
  return known;
}

DistanceCm estimate_anchor_distance(PowerDbm power, const CalibrationDatabase& db) {
  if (db.entries.empty()) throw Error(ErrorCode::EmptyDatabase, "calibration database has no entries");
  std::vector<DistanceCm> per_reference;
  per_reference.reserve(db.entries.size());
  for (const auto& entry : db.entries) {
    per_reference.push_back(pathloss::distance_from_power(power, entry.power, entry.distance, db.alpha_hat));
  }
  return pathloss::aggregate_distance(per_reference);
}

PositionEstimate multilaterate(std::span<const RangeTarget> targets, const EstimatorConfig& config) {
  if (targets.size() < 2) {
    throw Error(ErrorCode::TooFewTargets,
                "need at least 2 ranged anchors, have " + std::to_string(targets.size()));
  }
  PositionEstimate estimate;
  std::vector<Point2D> selected;
  std::vector<Point2D> others;
  std::vector<Circle> other_circles;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      const RangeTarget& a = targets[i];
      const RangeTarget& b = targets[j];
      IntersectionOutcome outcome = IntersectionOutcome::none({});
      try {
        outcome = circle_intersection({a.position, a.distance.value}, {b.position, b.distance.value});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CoincidentCenters) throw;
        estimate.skipped_pairs.push_back({a.anchor, b.anchor, e.code()});
        continue;
      }
      others.clear();
      other_circles.clear();
      for (std::size_t k = 0; k < targets.size(); ++k) {
        if (k == i || k == j) continue;
        others.push_back(targets[k].position);
        other_circles.push_back({targets[k].position, targets[k].distance.value});
      }
      const Point2D point = config.candidate_rule == CandidateRule::RangeResidual
                                ? select_candidate(outcome, std::span<const Circle>(other_circles))
                                : select_candidate(outcome, std::span<const Point2D>(others));
      estimate.per_pair_points.push_back({a.anchor, b.anchor, outcome.kind(), point});
      selected.push_back(point);
    }
  }
  if (selected.empty() || selected.size() < config.min_pairs) {
    throw Error(ErrorCode::TooFewUsablePairs,
                std::to_string(selected.size()) + " usable anchor pairs, need " +
                    std::to_string(std::max<std::size_t>(config.min_pairs, 1)));
  }
  estimate.position = centroid(selected);
  return estimate;
}

PositionEstimate locate(const ScanRecord& scan, const CalibrationDatabase& db, const AnchorMap& anchors,
                        const EstimatorConfig& config) {
  if (db.entries.empty()) throw Error(ErrorCode::EmptyDatabase, "calibration database has no entries");
  const auto strongest = select_top_n(scan, anchors, config.n);

  std::vector<RangeTarget> targets;
  std::vector<UsedAnchor> used;
  for (const auto& [id, power] : strongest) {
    const DistanceCm range = estimate_anchor_distance(power, db);
    targets.push_back({id, anchors.at(id), range});
    used.push_back({id, power, range});
  }
  PositionEstimate estimate = multilaterate(targets, config);
  estimate.used_anchors = std::move(used);
  for (const auto& [id, power] : scan.readings) {
    if (!anchors.contains(id)) ++estimate.ignored_readings;
  }
  return estimate;
}

}  // namespace rssiloc
