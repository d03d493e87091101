#include "rssiloc/cli.hpp"

#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "rssiloc/bubble_map.hpp"
#include "rssiloc/calibration.hpp"
#include "rssiloc/error.hpp"
#include "rssiloc/estimator.hpp"
#include "rssiloc/evaluation.hpp"
#include "rssiloc/formats.hpp"
#include "rssiloc/simulator.hpp"
#include "rssiloc/text_io.hpp"

namespace rssiloc::cli {

namespace {

using text_io::format_number;

struct CalibrateArgs {
  std::string anchors, trace, positions, out;
  std::size_t m = kDefaultCalibrationAnchors;
  std::optional<double> alpha_min, alpha_max;
};

struct EstimateArgs {
  std::string db, anchors, trace, truth, out;
  std::size_t n = kDefaultEstimatorAnchors;
  std::size_t min_pairs = 1;
  std::string candidate_rule = "range_residual";
};

struct SimulateArgs {
  std::string config, trace_out, truth_out, anchors_out;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha_true, sigma, dropout, rssi_floor;
};

struct RenderArgs {
  std::string anchors, trace, truth, svg_out, table_out;
};

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Usage: return kUsage;
    case ErrorCategory::MalformedInput: return kMalformedInput;
    case ErrorCategory::EstimationFailure: return kEstimationFailure;
    case ErrorCategory::Io: return kIoFailure;
  }
  return kMalformedInput;
}

EstimatorConfig estimator_config(const EstimateArgs& args) {
  EstimatorConfig config;
  config.n = args.n;
  config.min_pairs = args.min_pairs;
  config.candidate_rule = *parse_candidate_rule(args.candidate_rule);
  return config;
}

HeaderParams estimator_params(const EstimatorConfig& config, const CalibrationDatabase& db) {
  return {{"m", std::to_string(db.m)},
          {"n", std::to_string(config.n)},
          {"min_pairs", std::to_string(config.min_pairs)},
          {"tie_break", "lower_y_then_x"},
          {"candidate_rule", std::string(to_string(config.candidate_rule))},
          {"alpha_hat", format_number(db.alpha_hat.value)}};
}

void run_calibrate(const CalibrateArgs& args, std::ostream& out) {
  const AnchorMap anchors = load_anchors(args.anchors);
  const auto trace = load_trace(args.trace);
  const auto positions = load_ground_truth(args.positions);
  if (positions.empty()) throw Error(ErrorCode::MalformedGroundTruth, args.positions + ": no known positions");

  std::map<double, const ScanRecord*> scan_at;
  for (const auto& scan : trace) scan_at.emplace(scan.timestamp_s, &scan);

  const pathloss::AlphaFilter filter{args.alpha_min, args.alpha_max};
  std::vector<CalibrationBatch> batches;
  std::size_t filtered = 0;
  for (const auto& known : positions) {
    const auto it = scan_at.find(known.timestamp_s);
    if (it == scan_at.end()) {
      throw Error(ErrorCode::MissingGroundTruth,
                  args.trace + ": no scan at known-position timestamp " + format_number(known.timestamp_s));
    }
    batches.push_back(calibrate_at(known.position, *it->second, anchors, args.m, filter));
    filtered += batches.back().filtered_pairs;
  }
  const CalibrationDatabase db = merge_calibrations(batches);
  save_database(db, args.out);
  out << "calibrated " << batches.size() << " position(s): m=" << db.m << " entries=" << db.entries.size()
      << " alpha_samples=" << db.alpha_samples.size() << " skipped_pairs=" << db.skipped_pairs
      << " filtered_pairs=" << filtered << " alpha_hat=" << format_number(db.alpha_hat.value) << '\n';
}

int run_locate(const EstimateArgs& args, std::ostream& out) {
  const CalibrationDatabase db = load_database(args.db);
  const AnchorMap anchors = load_anchors(args.anchors);
  const auto trace = load_trace(args.trace);
  const EstimatorConfig config = estimator_config(args);

  std::ostringstream text;
  text << text_io::header_line("estimates", 1, estimator_params(config, db)) << '\n';
  text << "timestamp_s,status,est_x_cm,est_y_cm,used_anchors,pairs,skipped_pairs\n";
  std::size_t located = 0;
  for (const auto& scan : trace) {
    text << format_number(scan.timestamp_s) << ',';
    try {
      const PositionEstimate e = locate(scan, db, anchors, config);
      text << "ok," << format_number(e.position.x) << ',' << format_number(e.position.y) << ','
           << e.used_anchors.size() << ',' << e.per_pair_points.size() << ',' << e.skipped_pairs.size() << '\n';
      ++located;
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::EstimationFailure) throw;
      text << to_string(e.code()) << ",,," << select_top_n(scan, anchors, config.n).size() << ",0,0\n";
    }
  }
  text_io::write_file_atomic(args.out, text.str());
  out << "located " << located << " of " << trace.size() << " scan(s)\n";
  if (!trace.empty() && located == 0) {
    throw Error(ErrorCode::TooFewUsablePairs, "no scan in " + args.trace + " could be located");
  }
  return kSuccess;
}

void run_simulate(const SimulateArgs& args, std::ostream& out) {
  SimulationConfig config = load_simulation_config(args.config);
  if (args.seed) config.channel.seed = *args.seed;
  if (args.alpha_true) config.channel.alpha_true.value = *args.alpha_true;
  if (args.sigma) config.channel.shadow_sigma_db = *args.sigma;
  if (args.dropout) config.channel.dropout_prob = *args.dropout;
  if (args.rssi_floor) config.channel.rssi_floor.value = *args.rssi_floor;
  validate(config.channel);

  const GroundTruthTrace sim = run_trajectory(config.trajectory, config.testbed, config.channel,
                                              config.first_draw_index, config.start_time_s);
  std::vector<ScanRecord> scans;
  std::vector<TimedPosition> truth;
  for (const auto& rec : sim.records) {
    scans.push_back(rec.scan);
    truth.push_back({rec.scan.timestamp_s, rec.true_position});
  }
  const ChannelModel& ch = config.channel;
  const HeaderParams params{{"seed", std::to_string(ch.seed)},
                            {"alpha_true", format_number(ch.alpha_true.value)},
                            {"ref_power_dbm", format_number(ch.ref_power.value)},
                            {"ref_distance_cm", format_number(ch.ref_distance.value)},
                            {"shadow_sigma_db", format_number(ch.shadow_sigma_db)},
                            {"dropout_prob", format_number(ch.dropout_prob)},
                            {"rssi_floor_dbm", format_number(ch.rssi_floor.value)},
                            {"first_draw_index", std::to_string(config.first_draw_index)}};
  text_io::write_file_atomic(args.trace_out, serialize_trace(scans, params));
  text_io::write_file_atomic(args.truth_out, serialize_ground_truth(truth, params));
  if (!args.anchors_out.empty()) text_io::write_file_atomic(args.anchors_out, serialize_anchors(config.testbed.anchors));
  out << "simulated " << scans.size() << " scan(s) over " << config.trajectory.waypoints.size()
      << " waypoint(s) with " << config.testbed.anchors.size() << " anchors\n";
}

void run_evaluate(const EstimateArgs& args, std::ostream& out) {
  const CalibrationDatabase db = load_database(args.db);
  const AnchorMap anchors = load_anchors(args.anchors);
  const auto trace = load_trace(args.trace);
  const auto truth = load_ground_truth(args.truth);
  const EstimatorConfig config = estimator_config(args);
  const EvaluationReport report = evaluate_trace(trace, truth, db, anchors, config);
  text_io::write_file_atomic(args.out, serialize_report(report, estimator_params(config, db)));
  out << "evaluated " << trace.size() << " scan(s): located=" << report.rows.size()
      << " failures=" << report.failures.size();
  if (const auto s = report.summary()) {
    out << " median_error_cm=" << text_io::format_fixed(s->median_cm, 2)
        << " max_error_cm=" << text_io::format_fixed(s->max_cm, 2);
  }
  out << '\n';
}

void run_render(const RenderArgs& args, std::ostream& out) {
  const AnchorMap anchors = load_anchors(args.anchors);
  const auto trace = load_trace(args.trace);
  std::optional<Point2D> robot;
  if (!args.truth.empty()) {
    const auto truth = load_ground_truth(args.truth);
    if (!truth.empty()) {
      std::vector<Point2D> points;
      for (const auto& row : truth) points.push_back(row.position);
      robot = centroid(points);
    }
  }
  emit_bubble_map(trace, anchors, robot, args.svg_out, args.table_out);
  out << "wrote " << args.svg_out << " and " << args.table_out << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"RSSI multilateration: calibrate, locate, simulate, evaluate, render-map", "rssiloc"};
  app.require_subcommand(1);

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Build a calibration database from scans at known positions");
  calibrate->add_option("--anchors", cal.anchors, "Anchors file")->required();
  calibrate->add_option("--trace", cal.trace, "Scan trace file")->required();
  calibrate->add_option("--positions", cal.positions, "Known positions (ground-truth format), matched by timestamp")
      ->required();
  calibrate->add_option("--out", cal.out, "Calibration database to write")->required();
  calibrate->add_option("--m", cal.m, "Strongest anchors used per calibration point")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
  calibrate->add_option("--alpha-min", cal.alpha_min, "Discard exponent samples below this");
  calibrate->add_option("--alpha-max", cal.alpha_max, "Discard exponent samples above this");

  EstimateArgs loc;
  auto* locate_cmd = app.add_subcommand("locate", "Estimate a position for every scan in a trace");
  locate_cmd->add_option("--db", loc.db, "Calibration database")->required();
  locate_cmd->add_option("--anchors", loc.anchors, "Anchors file")->required();
  locate_cmd->add_option("--trace", loc.trace, "Scan trace file")->required();
  locate_cmd->add_option("--out", loc.out, "Estimates file to write")->required();

  EstimateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Compare estimates against ground truth");
  evaluate->add_option("--db", ev.db, "Calibration database")->required();
  evaluate->add_option("--anchors", ev.anchors, "Anchors file")->required();
  evaluate->add_option("--trace", ev.trace, "Scan trace file")->required();
  evaluate->add_option("--truth", ev.truth, "Ground-truth file")->required();
  evaluate->add_option("--out", ev.out, "Evaluation report to write")->required();

  for (auto [cmd, args] : {std::pair{locate_cmd, &loc}, std::pair{evaluate, &ev}}) {
    cmd->add_option("--n", args->n, "Strongest anchors used per scan")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
    cmd->add_option("--min-pairs", args->min_pairs, "Minimum usable anchor pairs per estimate")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
    cmd->add_option("--candidate-rule", args->candidate_rule,
                    "How each pair's intersection point is chosen: range_residual or anchor_distance")
        ->capture_default_str()
        ->check(CLI::IsMember({"range_residual", "anchor_distance"}));
  }

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a scan trace and ground truth from a testbed config");
  simulate->add_option("--config", sim.config, "Testbed config (JSON)")->required();
  simulate->add_option("--trace-out", sim.trace_out, "Scan trace file to write")->required();
  simulate->add_option("--truth-out", sim.truth_out, "Ground-truth file to write")->required();
  simulate->add_option("--anchors-out", sim.anchors_out, "Also write the testbed anchors");
  simulate->add_option("--seed", sim.seed, "Override channel seed");
  simulate->add_option("--alpha-true", sim.alpha_true, "Override path-loss exponent");
  simulate->add_option("--sigma", sim.sigma, "Override shadowing standard deviation (dB)");
  simulate->add_option("--dropout", sim.dropout, "Override dropout probability");
  simulate->add_option("--rssi-floor", sim.rssi_floor, "Override receiver floor (dBm)");

  RenderArgs ren;
  auto* render = app.add_subcommand("render-map", "Render a mean-RSSI bubble map (SVG + table)");
  render->add_option("--anchors", ren.anchors, "Anchors file")->required();
  render->add_option("--trace", ren.trace, "Scan trace file")->required();
  render->add_option("--truth", ren.truth, "Ground-truth file; marks the mean robot position");
  render->add_option("--svg-out", ren.svg_out, "SVG file to write")->required();
  render->add_option("--table-out", ren.table_out, "Bubble table to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error category=" << to_string(ErrorCategory::Usage) << " code=UsageError\n" << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*calibrate) run_calibrate(cal, out);
    if (*locate_cmd) run_locate(loc, out);
    if (*simulate) run_simulate(sim, out);
    if (*evaluate) run_evaluate(ev, out);
    if (*render) run_render(ren, out);
  } catch (const Error& e) {
    err << "error category=" << to_string(e.category()) << " code=" << to_string(e.code()) << '\n'
        << e.what() << '\n';
    return exit_code_for(e.category());
  }
  return kSuccess;
}

}  // namespace rssiloc::cli
