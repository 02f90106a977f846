#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qis/baseline.hpp"
#include "qis/celestial.hpp"
#include "qis/utc.hpp"

namespace qis {

// Interferometer arm imbalance expressed as a time offset tau = t_A - t_B,
// swept linearly from tau_initial to tau_final over the run.
struct AlignmentProfile {
  double tau_initial;  // s
  double tau_final;    // s
  double delta_tau;    // s, localization width (> 0)

  bool operator==(const AlignmentProfile&) const = default;
};

struct FrameSpec {
  enum class Kind {
    cmb,        // microwave-background frame preset
    lab,        // no boost at all: beta_x identically zero
    explicit_,  // caller-supplied speed and apex direction
  };
  Kind kind = Kind::cmb;
  double speed = 0.0;  // m/s, explicit_ only
  EquatorialDirection direction{0.0, 0.0};

  bool operator==(const FrameSpec&) const = default;
};

struct ExperimentRecord {
  std::string title;
  Baseline baseline;
  UtcInstant start_utc;
  UtcInstant end_utc;
  AlignmentProfile alignment;
  double fringe_period;  // s
  FrameSpec frame;
  OrbitalConstants constants;

  double duration() const { return end_utc.unix_s - start_utc.unix_s; }

  bool operator==(const ExperimentRecord&) const = default;
};

struct SimulateSpec {
  double base_rate = 20.0;    // coincidences per second
  double visibility = 0.9;    // nominal fringe visibility, [0, 1]
  double v_collapse = 0.0;    // visibility left where the hypothesis fails
  double bin_width = 50.0;    // s
  double phase = 0.0;         // rad, fringe phase at t_rel = 0
  bool hyp_unbounded = true;
  double hyp_speed = 0.0;     // m/s, > c, used when !hyp_unbounded
  std::optional<std::uint64_t> seed;  // absent: generated and echoed

  bool operator==(const SimulateSpec&) const = default;
};

struct PlanSpec {
  // Missing fields fall back to the experiment record (and the composed frame
  // speed at the run start) when the planner runs.
  std::optional<double> d_ab;                  // m
  std::optional<double> achievable_alignment;  // m, c*tau
  std::optional<double> delta_tau;             // s
  std::optional<double> fringe_period;         // s
  std::optional<double> frame_speed;           // m/s

  bool operator==(const PlanSpec&) const = default;
};

struct ScanSpec {
  std::vector<double> speeds = {kCmbSpeed};  // m/s
  // Lattice mode: n_dec x n_ra equal-area-ish sky grid.  Explicit mode: the
  // cross product ra_list x dec_list.
  bool explicit_directions = false;
  int n_dec = 12;
  int n_ra = 24;
  std::vector<double> ra_list;   // rad
  std::vector<double> dec_list;  // rad

  bool operator==(const ScanSpec&) const = default;
};

}  // namespace qis
