#pragma once

#include <string>
#include <vector>

#include "qis/bound.hpp"
#include "qis/record.hpp"

namespace qis {

struct FrameGrid {
  std::vector<double> speeds;  // m/s
  std::vector<EquatorialDirection> directions;
};

// Equal-area-ish sky lattice: declinations at uniform steps in sin(dec),
// right ascensions uniform, both offset off the poles and the meridian.
FrameGrid lattice_grid(int n_dec, int n_ra, std::vector<double> speeds);

FrameGrid grid_from_spec(const ScanSpec& spec);

struct ScanRow {
  int cell;  // index in speed-major, then dec, then ra order
  double speed;
  EquatorialDirection direction;
  bool ok = false;
  std::string error;
  bool good_alignment = false;
  double attainable_if_bad = 0.0;  // m/s
  int n_crossings = 0;
  double bound = 0.0;    // m/s
  double ceiling = 0.0;  // m/s
};

// Evaluates every (speed, direction) cell as if that frame replaced the
// preset: the candidate is still composed with the orbital and spin terms.
// Cells are independent; a failing cell records its error and the scan goes
// on.  Rows come back in cell order regardless of thread count.
std::vector<ScanRow> scan_frames(const ExperimentRecord& rec,
                                 const FrameGrid& grid, double step,
                                 int threads = 0);

}  // namespace qis
