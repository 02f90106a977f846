#include "qis/report.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "qis/errors.hpp"

namespace qis {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  return out;
}

std::string frame_line(const FrameSpec& f) {
  switch (f.kind) {
    case FrameSpec::Kind::cmb:
      return "cmb";
    case FrameSpec::Kind::lab:
      return "lab";
    case FrameSpec::Kind::explicit_:
      return "explicit speed=" + g17(f.speed) +
             " m/s ra=" + g17(f.direction.right_ascension) +
             " rad dec=" + g17(f.direction.declination) + " rad";
  }
  return "?";
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

void write_series_csv(const std::filesystem::path& path,
                      const ExperimentRecord& rec, const BoundSeries& series) {
  auto out = open_out(path);
  out << kSeriesCsvHeader << "\n";
  for (const auto& s : series.samples) {
    out << format_utc(UtcInstant{rec.start_utc.unix_s + s.t}) << ","
        << g17(s.t) << "," << g17(s.r) << "," << g17(s.beta_x) << ","
        << g17(s.v_qi_min / kSpeedOfLight) << "," << (s.capped ? 1 : 0)
        << "\n";
  }
}

void write_scan_csv(const std::filesystem::path& path,
                    const std::vector<ScanRow>& rows) {
  auto out = open_out(path);
  out << kScanCsvHeader << "\n";
  for (const auto& row : rows) {
    out << row.cell << "," << g17(row.speed) << ","
        << g17(row.direction.right_ascension * 180.0 / kPi) << ","
        << g17(row.direction.declination * 180.0 / kPi) << ",";
    if (row.ok) {
      out << (row.good_alignment ? "good" : "bad") << "," << row.n_crossings
          << "," << g17(row.bound / kSpeedOfLight) << ",ok\n";
    } else {
      std::string msg = row.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      out << ",,,error: " << msg << "\n";
    }
  }
}

void write_counts_csv(const std::filesystem::path& path,
                      const ExperimentRecord& rec,
                      const std::vector<BinCount>& counts) {
  auto out = open_out(path);
  out << kCountsCsvHeader << "\n";
  for (const auto& b : counts)
    out << format_utc(UtcInstant{rec.start_utc.unix_s + b.t_start}) << ","
        << b.count << "\n";
}

AnalyzeOutput run_analyze(const ParsedConfig& cfg,
                          const std::filesystem::path& out_dir, double step) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentRecord& rec = cfg.record;
  const EvalContext ctx(rec);
  AnalyzeOutput out;
  out.series = evaluate_series(rec, step);

  double r_min = std::numeric_limits<double>::infinity();
  double r_max = 0.0, beta_max = 0.0;
  for (const auto& s : out.series.samples) {
    r_min = std::min(r_min, std::abs(s.r));
    r_max = std::max(r_max, std::abs(s.r));
    beta_max = std::max(beta_max, std::abs(s.beta_x));
  }
  out.alignment = classify_alignment(r_max, beta_max);
  out.theta0 = ctx.theta0_rad();
  out.phi0 = rec.baseline.phi0;
  out.lab_speed = ctx.lab_velocity_in_frame(0.0).norm();

  std::filesystem::create_directories(out_dir);
  out.series_csv = out_dir / (rec.title + "_series.csv");
  write_series_csv(out.series_csv, rec, out.series);
  const double elapsed = ms_since(t0);

  std::ostringstream rep;
  rep << "run = analyze\n";
  rep << "title = " << rec.title << "\n";
  rep << "station_a = " << rec.baseline.a.name << "\n";
  rep << "station_b = " << rec.baseline.b.name << "\n";
  rep << "separation_m = " << g17(rec.baseline.d_ab) << "\n";
  rep << "window_start_utc = " << format_utc(rec.start_utc) << "\n";
  rep << "window_end_utc = " << format_utc(rec.end_utc) << "\n";
  rep << "duration_s = " << g17(rec.duration()) << "\n";
  rep << "step_s = " << g17(step) << "\n";
  rep << "frame = " << frame_line(rec.frame) << "\n";
  rep << "theta0_rad = " << g17(out.theta0) << "\n";
  rep << "phi0_rad = " << g17(out.phi0) << "\n";
  rep << "lab_speed_m_s = " << g17(out.lab_speed) << "\n";
  rep << "r_abs_min = " << g17(r_min) << "\n";
  rep << "r_abs_max = " << g17(r_max) << "\n";
  rep << "beta_x_abs_max = " << g17(beta_max) << "\n";
  rep << "alignment = " << (out.alignment.good ? "good" : "bad") << "\n";
  if (!out.alignment.good)
    rep << "attainable_bound_over_c = "
        << g17(out.alignment.attainable_bound / kSpeedOfLight) << "\n";
  rep << "n_crossings = " << out.series.crossings.size() << "\n";
  for (std::size_t i = 0; i < out.series.crossings.size(); ++i) {
    const double t = out.series.crossings[i];
    rep << "crossing_" << (i + 1) << "_utc = "
        << format_utc(UtcInstant{rec.start_utc.unix_s + t}) << "\n";
    rep << "crossing_" << (i + 1) << "_t_rel_s = " << g17(t) << "\n";
  }
  rep << "fringe_period_s = " << g17(rec.fringe_period) << "\n";
  rep << "bound_over_c = " << g17(out.series.bound / kSpeedOfLight) << "\n";
  rep << "ceiling_over_c = " << g17(out.series.ceiling / kSpeedOfLight)
      << "\n";
  rep << "evaluation_ms = " << g17(elapsed) << "\n";
  rep << "series_csv = " << out.series_csv.string() << "\n";
  out.report_text = rep.str();
  return out;
}

ScanOutput run_scan(const ParsedConfig& cfg,
                    const std::filesystem::path& out_dir, double step,
                    int threads) {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentRecord& rec = cfg.record;
  const FrameGrid grid = grid_from_spec(cfg.scan);
  ScanOutput out;
  out.rows = scan_frames(rec, grid, step, threads);

  std::filesystem::create_directories(out_dir);
  out.scan_csv = out_dir / (rec.title + "_scan.csv");
  write_scan_csv(out.scan_csv, out.rows);
  const double elapsed = ms_since(t0);

  std::size_t ok = 0, good = 0, crossing_cells = 0;
  double best = 0.0;
  for (const auto& row : out.rows) {
    if (!row.ok) continue;
    ++ok;
    if (row.good_alignment) ++good;
    if (row.n_crossings > 0) ++crossing_cells;
    best = std::max(best, row.bound);
  }
  std::ostringstream rep;
  rep << "run = scan\n";
  rep << "title = " << rec.title << "\n";
  rep << "speeds = " << grid.speeds.size() << "\n";
  rep << "directions = " << grid.directions.size() << "\n";
  rep << "cells = " << out.rows.size() << "\n";
  rep << "cells_ok = " << ok << "\n";
  rep << "cells_error = " << (out.rows.size() - ok) << "\n";
  rep << "cells_good_alignment = " << good << "\n";
  rep << "cells_with_crossing = " << crossing_cells << "\n";
  rep << "best_bound_over_c = " << g17(best / kSpeedOfLight) << "\n";
  rep << "elapsed_ms = " << g17(elapsed) << "\n";
  rep << "scan_csv = " << out.scan_csv.string() << "\n";
  out.report_text = rep.str();
  return out;
}

PlanOutput run_plan(const ParsedConfig& cfg) {
  const ExperimentRecord& rec = cfg.record;
  PlanOutput out;
  out.input.d_ab = cfg.plan.d_ab.value_or(rec.baseline.d_ab);
  out.input.achievable_alignment = cfg.plan.achievable_alignment.value_or(
      std::abs(rec.alignment.tau_initial) * kSpeedOfLight);
  out.input.delta_tau = cfg.plan.delta_tau.value_or(rec.alignment.delta_tau);
  out.input.fringe_period = cfg.plan.fringe_period.value_or(rec.fringe_period);
  if (cfg.plan.frame_speed) {
    out.input.frame_speed = *cfg.plan.frame_speed;
  } else {
    const EvalContext ctx(rec);
    out.input.frame_speed = ctx.lab_velocity_in_frame(0.0).norm();
  }
  out.result = plan(out.input, rec.constants);

  std::ostringstream rep;
  rep << "run = plan\n";
  rep << "title = " << rec.title << "\n";
  rep << "d_ab_m = " << g17(out.input.d_ab) << "\n";
  rep << "achievable_alignment_m = " << g17(out.input.achievable_alignment)
      << "\n";
  rep << "delta_tau_s = " << g17(out.input.delta_tau) << "\n";
  rep << "fringe_period_s = " << g17(out.input.fringe_period) << "\n";
  rep << "frame_speed_m_s = " << g17(out.input.frame_speed) << "\n";
  rep << "required_r = " << g17(out.result.required_r) << "\n";
  rep << "achievable_r = "
      << g17(out.input.achievable_alignment / out.input.d_ab) << "\n";
  rep << "simultaneity_reachable = "
      << (out.result.simultaneity_reachable ? "yes" : "no") << "\n";
  rep << "ceiling_over_c = " << g17(out.result.ceiling / kSpeedOfLight)
      << "\n";
  if (out.result.rotation_bound)
    rep << "rotation_bound_over_c = "
        << g17(*out.result.rotation_bound / kSpeedOfLight) << "\n";
  else
    rep << "rotation_bound_over_c = unconstrained\n";
  rep << "attainable_bound_over_c = "
      << g17(out.result.attainable_bound / kSpeedOfLight) << "\n";
  if (out.result.required_fringe_time)
    rep << "required_fringe_time_s = " << g17(*out.result.required_fringe_time)
        << "\n";
  else
    rep << "required_fringe_time_s = unreachable\n";
  out.report_text = rep.str();
  return out;
}

SimulateOutput run_simulate(const ParsedConfig& cfg,
                            const std::filesystem::path& out_dir,
                            std::optional<std::uint64_t> seed_override) {
  const ExperimentRecord& rec = cfg.record;
  const SimulateSpec& spec = cfg.simulate;
  const FringeModel model{spec.base_rate, spec.visibility, spec.v_collapse,
                          spec.bin_width, spec.phase, rec.fringe_period};
  const InfluenceHypothesis hyp{spec.hyp_unbounded, spec.hyp_speed};

  bool generated = false;
  std::uint64_t seed;
  if (seed_override) {
    seed = *seed_override;
  } else if (spec.seed) {
    seed = *spec.seed;
  } else {
    seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^
           std::random_device{}();
    generated = true;
  }

  SimulateOutput out;
  out.counts = simulate_counts(rec, model, hyp, seed);
  out.collapse = detect_collapse(out.counts, model);

  std::filesystem::create_directories(out_dir);
  out.counts_csv = out_dir / (rec.title + "_counts.csv");
  write_counts_csv(out.counts_csv, rec, out.counts);

  std::ostringstream rep;
  rep << "run = simulate\n";
  rep << "title = " << rec.title << "\n";
  rep << "bins = " << out.counts.size() << "\n";
  rep << "bin_width_s = " << g17(model.bin_width) << "\n";
  rep << "base_rate_per_s = " << g17(model.base_rate) << "\n";
  rep << "visibility = " << g17(model.visibility) << "\n";
  rep << "v_collapse = " << g17(model.v_collapse) << "\n";
  if (hyp.unbounded)
    rep << "v_hyp = unbounded\n";
  else
    rep << "v_hyp = " << g17(hyp.speed) << " m/s\n";
  rep << "seed = " << seed << (generated ? " (generated)" : "") << "\n";
  rep << "collapsed = " << (out.collapse.collapsed ? "yes" : "no") << "\n";
  if (out.collapse.collapsed) {
    rep << "collapse_begin_utc = "
        << format_utc(UtcInstant{rec.start_utc.unix_s + out.collapse.t_begin})
        << "\n";
    rep << "collapse_end_utc = "
        << format_utc(UtcInstant{rec.start_utc.unix_s + out.collapse.t_end})
        << "\n";
  }
  rep << "min_window_visibility = " << g17(out.collapse.min_visibility)
      << "\n";
  rep << "windows = " << out.collapse.windows.size() << "\n";
  rep << "counts_csv = " << out.counts_csv.string() << "\n";
  out.report_text = rep.str();
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"preferred-frame influence-speed bound analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  double step = 10.0;
  std::uint64_t seed_value = 0;
  int threads = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file path")->required();
    cmd->add_option("--out-dir", out_dir, "directory for emitted CSV files");
    cmd->add_option("--step", step, "sampling step in seconds")
        ->check(CLI::PositiveNumber);
  };
  auto* analyze =
      app.add_subcommand("analyze", "evaluate the bound series for one run");
  add_common(analyze);
  auto* scan = app.add_subcommand("scan", "sweep candidate frames over a grid");
  add_common(scan);
  scan->add_option("--threads", threads, "worker threads (0 = hardware)");
  auto* plan_cmd =
      app.add_subcommand("plan", "size a future run from the record");
  add_common(plan_cmd);
  auto* simulate =
      app.add_subcommand("simulate", "synthesize coincidence counts and "
                                     "test for fringe collapse");
  add_common(simulate);
  auto* seed_opt =
      simulate->add_option("--seed", seed_value, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, out);
    return code == 0 ? 0 : 2;
  }

  try {
    const ParsedConfig cfg = load_config(config_path);
    if (app.got_subcommand(analyze)) {
      out << run_analyze(cfg, out_dir, step).report_text;
    } else if (app.got_subcommand(scan)) {
      out << run_scan(cfg, out_dir, step, threads).report_text;
    } else if (app.got_subcommand(plan_cmd)) {
      out << run_plan(cfg).report_text;
    } else {
      std::optional<std::uint64_t> seed_arg;
      if (seed_opt->count() > 0) seed_arg = seed_value;
      out << run_simulate(cfg, out_dir, seed_arg).report_text;
    }
    return 0;
  } catch (const ConfigError& e) {
    out << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    out << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qis
