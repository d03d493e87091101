#include <initializer_list>
#include <string>

#include <json.hpp>

#include "rssiloc/error.hpp"
#include "rssiloc/simulator.hpp"
#include "rssiloc/text_io.hpp"

namespace rssiloc {

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "rssiloc-testbed";
constexpr int kVersion = 1;

class ConfigReader {
 public:
  explicit ConfigReader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw Error(ErrorCode::MalformedConfig, source_ + ": " + path + ": " + message);
  }

  const json& object(const json& parent, const std::string& key, const std::string& path) const {
    const json& v = parent.at(key);
    if (!v.is_object()) fail(path + "." + key, "expected an object");
    return v;
  }

  void only_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, _] : obj.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) fail(path, "unknown key '" + key + "'");
    }
  }

  double number(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.contains(key)) fail(path, "missing '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
  }

  double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) const {
    return obj.contains(key) ? number(obj, key, path) : fallback;
  }

  std::uint64_t unsigned_or(const json& obj, const std::string& key, const std::string& path,
                            std::uint64_t fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      fail(path + "." + key, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string string_or(const json& obj, const std::string& key, const std::string& path,
                        const std::string& fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
  }

  Point2D point(const json& obj, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object with x_cm and y_cm");
    only_keys(obj, path, {"x_cm", "y_cm"});
    return {number(obj, "x_cm", path), number(obj, "y_cm", path)};
  }

 private:
  std::string source_;
};

}  // namespace

SimulationConfig parse_simulation_config(std::string_view json_text, std::string_view source_name) {
  const ConfigReader r{std::string(source_name)};
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    r.fail("$", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) r.fail("$", "expected a JSON object");
  r.only_keys(root, "$",
              {"format", "version", "floor", "anchors", "anchor_grid", "channel", "trajectory", "first_draw_index",
               "start_time_s"});
  if (r.string_or(root, "format", "$", "") != kFormat) r.fail("$.format", "expected \"rssiloc-testbed\"");
  if (r.unsigned_or(root, "version", "$", 0) != kVersion) r.fail("$.version", "unsupported version");

  SimulationConfig config;
  if (!root.contains("floor")) r.fail("$", "missing 'floor'");
  const json& floor = r.object(root, "floor", "$");
  r.only_keys(floor, "$.floor", {"min", "max"});
  if (!floor.contains("min") || !floor.contains("max")) r.fail("$.floor", "needs 'min' and 'max'");
  config.testbed.floor_min = r.point(floor.at("min"), "$.floor.min");
  config.testbed.floor_max = r.point(floor.at("max"), "$.floor.max");

  if (root.contains("anchors") == root.contains("anchor_grid")) {
    r.fail("$", "exactly one of 'anchors' or 'anchor_grid' is required");
  }
  if (root.contains("anchors")) {
    const json& list = root.at("anchors");
    if (!list.is_array()) r.fail("$.anchors", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "$.anchors[" + std::to_string(i) + "]";
      const json& a = list[i];
      if (!a.is_object()) r.fail(path, "expected an object");
      r.only_keys(a, path, {"id", "x_cm", "y_cm"});
      const std::string id = r.string_or(a, "id", path, "");
      if (!text_io::is_valid_anchor_id(id)) r.fail(path + ".id", "invalid anchor id '" + id + "'");
      if (!config.testbed.anchors.emplace(id, Point2D{r.number(a, "x_cm", path), r.number(a, "y_cm", path)}).second) {
        r.fail(path + ".id", "duplicate anchor id '" + id + "'");
      }
    }
  } else {
    const json& grid = r.object(root, "anchor_grid", "$");
    r.only_keys(grid, "$.anchor_grid", {"columns", "rows", "id_prefix"});
    const auto columns = r.unsigned_or(grid, "columns", "$.anchor_grid", 0);
    const auto rows = r.unsigned_or(grid, "rows", "$.anchor_grid", 0);
    if (columns == 0 || rows == 0) r.fail("$.anchor_grid", "columns and rows must be positive");
    config.testbed.anchors = grid_anchors(config.testbed.floor_min, config.testbed.floor_max, columns, rows,
                                          r.string_or(grid, "id_prefix", "$.anchor_grid", "ap"));
  }
  validate(config.testbed);

  if (root.contains("channel")) {
    const json& ch = r.object(root, "channel", "$");
    r.only_keys(ch, "$.channel",
                {"alpha_true", "ref_power_dbm", "ref_distance_cm", "shadow_sigma_db", "dropout_prob", "rssi_floor_dbm",
                 "seed"});
    ChannelModel& c = config.channel;
    c.alpha_true.value = r.number_or(ch, "alpha_true", "$.channel", c.alpha_true.value);
    c.ref_power.value = r.number_or(ch, "ref_power_dbm", "$.channel", c.ref_power.value);
    c.ref_distance.value = r.number_or(ch, "ref_distance_cm", "$.channel", c.ref_distance.value);
    c.shadow_sigma_db = r.number_or(ch, "shadow_sigma_db", "$.channel", c.shadow_sigma_db);
    c.dropout_prob = r.number_or(ch, "dropout_prob", "$.channel", c.dropout_prob);
    c.rssi_floor.value = r.number_or(ch, "rssi_floor_dbm", "$.channel", c.rssi_floor.value);
    c.seed = r.unsigned_or(ch, "seed", "$.channel", c.seed);
  }
  validate(config.channel);

  if (!root.contains("trajectory")) r.fail("$", "missing 'trajectory'");
  const json& traj = r.object(root, "trajectory", "$");
  r.only_keys(traj, "$.trajectory", {"scans_per_waypoint", "waypoints", "random_waypoints"});
  config.trajectory.scans_per_waypoint = r.unsigned_or(traj, "scans_per_waypoint", "$.trajectory", 1);
  if (config.trajectory.scans_per_waypoint == 0) r.fail("$.trajectory.scans_per_waypoint", "must be positive");
  if (traj.contains("waypoints") == traj.contains("random_waypoints")) {
    r.fail("$.trajectory", "exactly one of 'waypoints' or 'random_waypoints' is required");
  }
  if (traj.contains("waypoints")) {
    const json& list = traj.at("waypoints");
    if (!list.is_array()) r.fail("$.trajectory.waypoints", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      config.trajectory.waypoints.push_back(r.point(list[i], "$.trajectory.waypoints[" + std::to_string(i) + "]"));
    }
  } else {
    const json& rnd = r.object(traj, "random_waypoints", "$.trajectory");
    const std::string path = "$.trajectory.random_waypoints";
    r.only_keys(rnd, path, {"count", "seed", "min_anchor_clearance_cm"});
    config.trajectory.waypoints =
        random_waypoints(config.testbed, r.unsigned_or(rnd, "count", path, 0), r.unsigned_or(rnd, "seed", path, 1),
                         r.number_or(rnd, "min_anchor_clearance_cm", path, 50.0));
  }
  if (config.trajectory.waypoints.empty()) r.fail("$.trajectory", "needs at least one waypoint");
  for (std::size_t i = 0; i < config.trajectory.waypoints.size(); ++i) {
    if (!config.testbed.contains(config.trajectory.waypoints[i])) {
      r.fail("$.trajectory.waypoints[" + std::to_string(i) + "]", "outside the floor");
    }
  }

  config.first_draw_index = r.unsigned_or(root, "first_draw_index", "$", 0);
  config.start_time_s = r.number_or(root, "start_time_s", "$", 0.0);
  if (!(config.start_time_s >= 0.0)) r.fail("$.start_time_s", "must be >= 0");
  return config;
}

SimulationConfig load_simulation_config(const std::filesystem::path& path) {
  return parse_simulation_config(text_io::read_file(path), path.string());
}

}  // namespace rssiloc
