#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rssiloc/calibration.hpp"
#include "rssiloc/error.hpp"
#include "rssiloc/estimator.hpp"
#include "rssiloc/formats.hpp"
#include "rssiloc/scan.hpp"

namespace rssiloc {

struct EvaluationRow {
  double timestamp_s = 0.0;
  Point2D estimated;
  Point2D actual;
  double error_cm = 0.0;
};

struct FailedScan {
  double timestamp_s = 0.0;
  ErrorCode code = ErrorCode::TooFewTargets;
  std::string message;
};

struct ErrorSummary {
  double min_cm = 0.0;
  double median_cm = 0.0;
  double max_cm = 0.0;
};

struct EvaluationReport {
  /// Ascending by error_cm; equal errors keep trace order.
  std::vector<EvaluationRow> rows;
  std::vector<FailedScan> failures;

  /// Empty when no scan was located.
  std::optional<ErrorSummary> summary() const;
};

/// Euclidean distance in cm.
double position_error(Point2D estimated, Point2D actual);

/// Sorts rows ascending by error (stable).
void sort_by_error(std::vector<EvaluationRow>& rows);

/// Locates every scan and compares against the ground-truth row with the
/// same timestamp. Estimation errors become failure rows; a scan without a
/// ground-truth row throws MissingGroundTruth.
EvaluationReport evaluate_trace(const std::vector<ScanRecord>& trace, const std::vector<TimedPosition>& ground_truth,
                                const CalibrationDatabase& db, const AnchorMap& anchors,
                                const EstimatorConfig& config = {});

/// Report text: header, one (est_x_cm, est_y_cm, act_x_cm, act_y_cm,
/// error_cm) row per located scan with coordinates at full precision and the
/// error to 2 decimals, then a '#'-prefixed summary block.
std::string serialize_report(const EvaluationReport& report, const HeaderParams& params = {});

}  // namespace rssiloc
