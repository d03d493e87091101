#include "rssiloc/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rssiloc/error.hpp"
#include "rssiloc/text_io.hpp"

namespace rssiloc {

namespace {

struct Reading {
  AnchorId id;
  PowerDbm power;
  Point2D position;
};

constexpr int kDatabaseVersion = 1;
constexpr std::string_view kEntryColumns = "anchor_id,power_dbm,distance_cm,source_x_cm,source_y_cm";
constexpr double kAlphaHatConsistency = 1e-9;

}  // namespace

CalibrationBatch calibrate_at(Point2D known_position, const ScanRecord& scan, const AnchorMap& anchors,
                              std::size_t m, const pathloss::AlphaFilter& filter) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "calibration needs m >= 2");
  for (const auto& [id, position] : anchors) {
    if (distance(known_position, position) <= geometry_tolerance::kCoincidentCenters) {
      throw Error(ErrorCode::AnchorAtCalibrationPoint, "calibration point coincides with anchor " + id);
    }
  }

  std::vector<Reading> usable;
  for (const auto& [id, power] : scan.readings) {
    if (auto it = anchors.find(id); it != anchors.end()) usable.push_back({id, power, it->second});
  }
  if (usable.size() < m) {
    throw Error(ErrorCode::InsufficientAnchors,
                "calibration scan at t=" + text_io::format_number(scan.timestamp_s) + " has " +
                    std::to_string(usable.size()) + " usable readings, need " + std::to_string(m));
  }
  std::stable_sort(usable.begin(), usable.end(), [](const Reading& a, const Reading& b) {
    if (a.power.value != b.power.value) return a.power.value > b.power.value;
    return a.id < b.id;
  });
  usable.resize(m);

  CalibrationBatch batch;
  batch.m = m;
  for (const Reading& r : usable) {
    batch.entries.push_back({r.id, r.power, DistanceCm{distance(known_position, r.position)}, known_position});
  }
  for (std::size_t i = 0; i < batch.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < batch.entries.size(); ++j) {
      const auto& a = batch.entries[i];
      const auto& b = batch.entries[j];
      PathLossExponent alpha;
      try {
        alpha = pathloss::alpha_from_pair(a.power, a.distance, b.power, b.distance);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EqualDistances) throw;
        ++batch.skipped_pairs;
        continue;
      }
      if (filter.enabled() && !filter.accepts(alpha)) {
        ++batch.filtered_pairs;
        continue;
      }
      batch.alpha_samples.push_back(alpha);
    }
  }
  return batch;
}

CalibrationDatabase merge_calibrations(std::span<const CalibrationBatch> batches) {
  CalibrationDatabase db;
  if (batches.empty()) throw Error(ErrorCode::NoAlphaSamples, "no calibration batches");
  db.m = batches.front().m;
  for (const auto& batch : batches) {
    if (batch.m != db.m) {
      throw Error(ErrorCode::InvalidArgument, "calibration batches use different m values");
    }
    db.entries.insert(db.entries.end(), batch.entries.begin(), batch.entries.end());
    db.alpha_samples.insert(db.alpha_samples.end(), batch.alpha_samples.begin(), batch.alpha_samples.end());
    db.skipped_pairs += batch.skipped_pairs;
  }
  if (db.alpha_samples.empty()) {
    throw Error(ErrorCode::NoAlphaSamples, "calibration produced no path-loss exponent samples");
  }
  db.alpha_hat = pathloss::aggregate_alpha(db.alpha_samples);
  return db;
}

std::string serialize_database(const CalibrationDatabase& db) {
  std::ostringstream out;
  out << text_io::header_line("calibration", kDatabaseVersion) << '\n';
  out << "m=" << db.m << '\n';
  out << "alpha_hat=" << text_io::format_number(db.alpha_hat.value) << '\n';
  out << "alpha_samples=";
  for (std::size_t i = 0; i < db.alpha_samples.size(); ++i) {
    if (i) out << ';';
    out << text_io::format_number(db.alpha_samples[i].value);
  }
  out << '\n';
  out << "skipped_pairs=" << db.skipped_pairs << '\n';
  out << kEntryColumns << '\n';
  for (const auto& e : db.entries) {
    out << e.anchor << ',' << text_io::format_number(e.power.value) << ','
        << text_io::format_number(e.distance.value) << ',' << text_io::format_number(e.source_position.x) << ','
        << text_io::format_number(e.source_position.y) << '\n';
  }
  return out.str();
}

CalibrationDatabase parse_database(std::string_view content, std::string_view source_name) {
  text_io::LineReader reader(content, source_name, ErrorCode::MalformedDatabase);
  reader.header("calibration", kDatabaseVersion);

  auto field = [&](std::string_view key) -> std::string_view {
    std::string_view line;
    if (!reader.next(line)) reader.fail("missing field '" + std::string(key) + "'");
    const std::string prefix = std::string(key) + "=";
    if (line.substr(0, prefix.size()) != prefix) reader.fail("expected field '" + std::string(key) + "'");
    return line.substr(prefix.size());
  };

  CalibrationDatabase db;
  db.m = reader.count(field("m"), "m");
  if (db.m < 2) reader.fail("m must be at least 2");
  db.alpha_hat = PathLossExponent{reader.number(field("alpha_hat"), "alpha_hat")};
  std::string_view samples = field("alpha_samples");
  while (!samples.empty()) {
    const auto sep = samples.find(';');
    db.alpha_samples.push_back(PathLossExponent{reader.number(samples.substr(0, sep), "alpha_samples")});
    if (sep == std::string_view::npos) break;
    samples.remove_prefix(sep + 1);
    if (samples.empty()) reader.fail("trailing ';' in alpha_samples");
  }
  if (db.alpha_samples.empty()) reader.fail("alpha_samples is empty");
  const double mean = pathloss::aggregate_alpha(db.alpha_samples).value;
  if (std::abs(mean - db.alpha_hat.value) > kAlphaHatConsistency * std::max(1.0, std::abs(mean))) {
    reader.fail("alpha_hat does not equal the mean of alpha_samples");
  }
  db.skipped_pairs = reader.count(field("skipped_pairs"), "skipped_pairs");

  reader.column_header(kEntryColumns);
  std::string_view line;
  while (reader.next(line)) {
    const auto f = reader.fields(line, 5);
    if (!text_io::is_valid_anchor_id(f[0])) reader.fail("invalid anchor id '" + std::string(f[0]) + "'");
    CalibrationEntry e{std::string(f[0]), PowerDbm{reader.number(f[1], "power_dbm")},
                       DistanceCm{reader.number(f[2], "distance_cm")},
                       Point2D{reader.number(f[3], "source_x_cm"), reader.number(f[4], "source_y_cm")}};
    if (!(e.distance.value > 0.0)) reader.fail("distance_cm must be positive");
    db.entries.push_back(std::move(e));
  }
  if (db.entries.empty()) reader.fail("database has no entries");
  return db;
}

void save_database(const CalibrationDatabase& db, const std::filesystem::path& destination) {
  if (db.entries.empty() || db.alpha_samples.empty() || db.m < 2) {
    throw Error(ErrorCode::InvalidArgument, "refusing to save an incomplete calibration database");
  }
  text_io::write_file_atomic(destination, serialize_database(db));
}

CalibrationDatabase load_database(const std::filesystem::path& source) {
  const std::string content = text_io::read_file(source);
  return parse_database(content, source.string());
}

}  // namespace rssiloc
