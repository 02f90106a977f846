#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qis/record.hpp"

namespace qis {

// Signed speed with a simultaneity sentinel.  `unbounded` marks the exact
// r + beta_x = 0 pole where no finite speed is excluded; the flag keeps the
// infinity out of ordinary arithmetic.
struct QiSpeed {
  double v = 0.0;  // m/s
  bool unbounded = false;
};

// Minimum signed influence speed seen from the laboratory: -d_ab / tau.
QiSpeed v_qi_min_lab(double d_ab, double tau);

// Same quantity in a frame moving at beta_x along the baseline, with
// r = c*tau/d_ab:  -c (1 + r*beta_x) / (r + beta_x).  Pre: |r| < 1, |beta_x| < 1.
QiSpeed v_qi_min_boosted(double r, double beta_x);

double localization_ceiling(double d_ab, double delta_tau);

struct AlignmentAssessment {
  bool good;                // alignment resolves the frame's simultaneity sweep
  double attainable_bound;  // m/s; when bad, roughly c / r_max
};

// Bad iff r_max > beta_x_max: the arm imbalance then exceeds the largest
// simultaneity shift the frame can produce, and the crossing never happens.
AlignmentAssessment classify_alignment(double r_max, double beta_x_max);

struct BoundSample {
  double t;         // s, relative to run start
  double r;         // c*tau(t)/d_ab
  double beta_x;    // frame velocity projection / c
  double v_qi_min;  // m/s, signed, magnitude clamped at the ceiling
  bool capped;      // clamp applied (includes the simultaneity sentinel)
};

struct BoundSeries {
  std::vector<BoundSample> samples;
  std::vector<double> crossings;  // t_rel of each r + beta_x = 0 root
  double bound = 0.0;             // m/s, at the record's fringe period
  double ceiling = 0.0;           // m/s
  double step = 0.0;              // s
};

// One fully evaluated instant, shared by the series evaluator and the
// coincidence simulator so both always agree bit for bit.
struct EvalPoint {
  double t;
  double r;
  double beta_x;
  QiSpeed raw;
  double v_clamped;
  bool capped;
};

// Builds the per-run state (equinox phase, composed static velocity, spin
// amplitude) once; sample_at is then cheap and pure.
class EvalContext {
 public:
  explicit EvalContext(const ExperimentRecord& rec);

  EvalPoint sample_at(double t_rel) const;
  Eigen::Vector3d lab_velocity_in_frame(double t_rel) const;
  double theta0_rad() const { return theta0_; }
  double ceiling() const { return ceiling_; }
  const ExperimentRecord& record() const { return rec_; }

 private:
  ExperimentRecord rec_;
  double duration_;
  double theta0_ = 0.0;
  Eigen::Vector3d static_part_ = Eigen::Vector3d::Zero();  // orbital + candidate
  double spin_speed_ = 0.0;
  bool lab_frame_ = false;
  double ceiling_ = 0.0;
};

// Samples the window at a fixed step, locates every simultaneity crossing by
// sign change plus bisection, and fills bound/ceiling.
// Pre: 0 < step <= duration, |r(t)| < 1 across the window.
BoundSeries evaluate_series(const ExperimentRecord& rec, double step);

// Sliding-window conservative bound: max over half-fringe windows of the
// in-window minimum of |v_qi_min|, capped at the ceiling.  Throws DomainError
// when half a fringe exceeds the series span.
double extract_bound(const BoundSeries& series, double fringe_period);

struct PlanInput {
  double d_ab;                  // m
  double achievable_alignment;  // m, c*tau the hardware can hold
  double delta_tau;             // s
  double fringe_period;         // s
  double frame_speed;           // m/s
};

struct PlanResult {
  double required_r;  // alignment target |r| for the frame to sweep through 0
  double ceiling;     // m/s
  // nullopt when the frame speed is zero: rotation never limits, and the
  // simultaneity crossing is unreachable.
  std::optional<double> rotation_bound;        // m/s, at the given fringe period
  std::optional<double> required_fringe_time;  // s, rotation limit == ceiling
  double attainable_bound;                     // m/s
  bool simultaneity_reachable;
};

PlanResult plan(const PlanInput& in, const OrbitalConstants& c);

}  // namespace qis
