#include "rssiloc/evaluation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "rssiloc/text_io.hpp"

namespace rssiloc {

std::optional<ErrorSummary> EvaluationReport::summary() const {
  if (rows.empty()) return std::nullopt;
  std::vector<double> errors;
  errors.reserve(rows.size());
  for (const auto& r : rows) errors.push_back(r.error_cm);
  std::sort(errors.begin(), errors.end());
  const std::size_t n = errors.size();
  const double median = n % 2 == 1 ? errors[n / 2] : 0.5 * (errors[n / 2 - 1] + errors[n / 2]);
  return ErrorSummary{errors.front(), median, errors.back()};
}

double position_error(Point2D estimated, Point2D actual) { return distance(estimated, actual); }

void sort_by_error(std::vector<EvaluationRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const EvaluationRow& a, const EvaluationRow& b) { return a.error_cm < b.error_cm; });
}

EvaluationReport evaluate_trace(const std::vector<ScanRecord>& trace, const std::vector<TimedPosition>& ground_truth,
                                const CalibrationDatabase& db, const AnchorMap& anchors,
                                const EstimatorConfig& config) {
  std::map<double, Point2D> truth_at;
  for (const auto& row : ground_truth) truth_at.emplace(row.timestamp_s, row.position);

  EvaluationReport report;
  for (const auto& scan : trace) {
    const auto truth = truth_at.find(scan.timestamp_s);
    if (truth == truth_at.end()) {
      throw Error(ErrorCode::MissingGroundTruth,
                  "no ground-truth position at t=" + text_io::format_number(scan.timestamp_s));
    }
    try {
      const PositionEstimate estimate = locate(scan, db, anchors, config);
      report.rows.push_back(
          {scan.timestamp_s, estimate.position, truth->second, position_error(estimate.position, truth->second)});
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::EstimationFailure) throw;
      report.failures.push_back({scan.timestamp_s, e.code(), e.what()});
    }
  }
  sort_by_error(report.rows);
  return report;
}

std::string serialize_report(const EvaluationReport& report, const HeaderParams& params) {
  using text_io::format_fixed;
  using text_io::format_number;
  std::ostringstream out;
  out << text_io::header_line("evaluation", 1, params) << '\n';
  out << "est_x_cm,est_y_cm,act_x_cm,act_y_cm,error_cm\n";
  for (const auto& r : report.rows) {
    out << format_number(r.estimated.x) << ',' << format_number(r.estimated.y) << ',' << format_number(r.actual.x)
        << ',' << format_number(r.actual.y) << ',' << format_fixed(r.error_cm, 2) << '\n';
  }
  out << "# summary\n";
  out << "# scans=" << report.rows.size() + report.failures.size() << '\n';
  out << "# located=" << report.rows.size() << '\n';
  out << "# failures=" << report.failures.size() << '\n';
  if (const auto s = report.summary()) {
    out << "# min_error_cm=" << format_fixed(s->min_cm, 2) << '\n';
    out << "# median_error_cm=" << format_fixed(s->median_cm, 2) << '\n';
    out << "# max_error_cm=" << format_fixed(s->max_cm, 2) << '\n';
  }
  for (const auto& f : report.failures) {
    out << "# failed timestamp_s=" << format_number(f.timestamp_s) << " code=" << to_string(f.code) << '\n';
  }
  return out.str();
}

}  // namespace rssiloc
