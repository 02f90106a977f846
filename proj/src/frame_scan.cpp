#include "qis/frame_scan.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "qis/bound.hpp"
#include "qis/errors.hpp"

namespace qis {

namespace {

void check_speeds(const std::vector<double>& speeds) {
  if (speeds.empty()) throw ConfigError("frame grid needs at least one speed");
  for (const double s : speeds)
    if (!(s >= 0.0 && s < kSpeedOfLight))
      throw ConfigError("frame grid speeds must lie in [0, c)");
}

}  // namespace

FrameGrid lattice_grid(int n_dec, int n_ra, std::vector<double> speeds) {
  if (n_dec < 1 || n_ra < 1)
    throw ConfigError("frame grid must be at least 1x1");
  check_speeds(speeds);
  FrameGrid grid;
  grid.speeds = std::move(speeds);
  grid.directions.reserve(static_cast<std::size_t>(n_dec) * n_ra);
  for (int i = 0; i < n_dec; ++i) {
    // Uniform in sin(dec) with half-cell offsets: near equal solid angle
    // per cell, and no degenerate pole rows.
    const double sin_dec = -1.0 + (2.0 * i + 1.0) / n_dec;
    const double dec = std::asin(sin_dec);
    for (int j = 0; j < n_ra; ++j) {
      const double ra = (j + 0.5) * 2.0 * kPi / n_ra;
      grid.directions.push_back(make_direction(ra, dec));
    }
  }
  return grid;
}

FrameGrid grid_from_spec(const ScanSpec& spec) {
  check_speeds(spec.speeds);
  if (!spec.explicit_directions)
    return lattice_grid(spec.n_dec, spec.n_ra, spec.speeds);
  if (spec.ra_list.empty() || spec.dec_list.empty())
    throw ConfigError("[scan] explicit grid needs ra_list and dec_list");
  FrameGrid grid;
  grid.speeds = spec.speeds;
  grid.directions.reserve(spec.ra_list.size() * spec.dec_list.size());
  for (const double dec : spec.dec_list)
    for (const double ra : spec.ra_list)
      grid.directions.push_back(make_direction(ra, dec));
  return grid;
}

namespace {

ScanRow evaluate_cell(const ExperimentRecord& rec, const FrameGrid& grid,
                      std::size_t cell, double step) {
  const std::size_t n_dir = grid.directions.size();
  ScanRow row{};
  row.cell = static_cast<int>(cell);
  row.speed = grid.speeds[cell / n_dir];
  row.direction = grid.directions[cell % n_dir];
  try {
    ExperimentRecord probe = rec;
    probe.frame =
        FrameSpec{FrameSpec::Kind::explicit_, row.speed, row.direction};
    const BoundSeries series = evaluate_series(probe, step);
    double r_max = 0.0, beta_max = 0.0;
    for (const auto& s : series.samples) {
      r_max = std::max(r_max, std::abs(s.r));
      beta_max = std::max(beta_max, std::abs(s.beta_x));
    }
    const AlignmentAssessment a = classify_alignment(r_max, beta_max);
    row.ok = true;
    row.good_alignment = a.good;
    row.attainable_if_bad = a.attainable_bound;
    row.n_crossings = static_cast<int>(series.crossings.size());
    row.bound = series.bound;
    row.ceiling = series.ceiling;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<ScanRow> scan_frames(const ExperimentRecord& rec,
                                 const FrameGrid& grid, double step,
                                 int threads) {
  if (grid.speeds.empty() || grid.directions.empty())
    throw ConfigError("frame grid is empty");
  const std::size_t n_cells = grid.speeds.size() * grid.directions.size();
  std::vector<ScanRow> rows(n_cells);

  unsigned n_threads =
      threads > 0 ? static_cast<unsigned>(threads)
                  : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_cells));

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t cell = next.fetch_add(1);
      if (cell >= n_cells) return;
      rows[cell] = evaluate_cell(rec, grid, cell, step);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace qis
