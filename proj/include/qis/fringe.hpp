#pragma once

#include <cstdint>
#include <vector>

#include "qis/bound.hpp"
#include "qis/record.hpp"

namespace qis {

struct FringeModel {
  double base_rate;   // coincidences per second
  double visibility;  // nominal V0, [0, 1]
  double v_collapse = 0.0;  // residual visibility where the hypothesis fails
  double bin_width;   // s
  double phase;       // rad at t_rel = 0
  double fringe_period;  // s
};

struct InfluenceHypothesis {
  bool unbounded = true;
  double speed = 0.0;  // m/s, must exceed c when finite
};

struct BinCount {
  double t_start;  // s, relative to run start
  std::uint64_t count;
};

// splitmix64; the per-bin stream makes sampling order-independent, so bins
// may be drawn in parallel or individually re-derived.
std::uint64_t splitmix64_next(std::uint64_t& state);
double uniform01(std::uint64_t& state);
std::uint64_t bin_stream_state(std::uint64_t seed, std::uint64_t bin_index);

// Inverse-CDF Poisson draw; large means are split into chunks of <= 500 so
// the running product never underflows.
std::uint64_t poisson_sample(double lambda, std::uint64_t& state);

// Expected coincidences for one bin under the hypothesis that the influence
// propagates at the given speed in the record's frame: the modulation term
// survives only where the hypothesis speed reaches |v_qi_min(t)| (uncapped).
double expected_bin_rate(const EvalPoint& p, const FringeModel& m,
                         const InfluenceHypothesis& h, double t_center);

std::vector<BinCount> simulate_counts(const ExperimentRecord& rec,
                                      const FringeModel& m,
                                      const InfluenceHypothesis& h,
                                      std::uint64_t seed);

struct WindowFit {
  double t_start;
  double t_end;
  double visibility;
  double sigma;
  bool collapsed;
};

struct CollapseReport {
  bool collapsed = false;
  double t_begin = 0.0;  // bounding interval of flagged windows
  double t_end = 0.0;
  double min_visibility = 0.0;
  std::vector<WindowFit> windows;
};

// Slides a half-fringe window across the bins, fits a + b cos + c sin at the
// known period, and flags any window whose fitted visibility sits below half
// the nominal one by more than three standard errors.
CollapseReport detect_collapse(const std::vector<BinCount>& counts,
                               const FringeModel& m);

}  // namespace qis
