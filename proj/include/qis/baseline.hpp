#pragma once

#include <Eigen/Dense>
#include <string>

#include "qis/celestial.hpp"
#include "qis/utc.hpp"

namespace qis {

struct Station {
  std::string name;
  double latitude;   // rad, north positive
  double longitude;  // rad, east positive

  bool operator==(const Station&) const = default;
};

double colatitude(const Station& s);

// Angle of the station meridian from the vernal point (local sidereal angle).
double vernal_hour_angle(const Station& s, UtcInstant t);

struct Baseline {
  Station a;
  Station b;
  double d_ab;  // m, detector separation along the A->B axis
  double phi0;  // rad, vernal hour angle of station A at t_rel = 0

  bool operator==(const Baseline&) const = default;
};

// Unit vector from A toward B at t_rel seconds after the run start, on the
// rotating sphere.  Swapping A and B negates it exactly.
Eigen::Vector3d unit_baseline(const Baseline& b, double t_rel,
                              const OrbitalConstants& c);

// Projection of a frame velocity onto the baseline axis, in units of c.
double beta_x(const Baseline& b, double t_rel,
              const Eigen::Vector3d& v_frame_rel_lab,
              const OrbitalConstants& c);

}  // namespace qis
