#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

#include "qis/utc.hpp"

namespace qis {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Largest per-part speed compose_galilean accepts; beyond this the Galilean
// composition underlying the whole analysis stops being a good approximation.
inline constexpr double kGalileanGuard = 0.01 * kSpeedOfLight;

// All vectors live in the equatorial-vernal frame: z along the Earth's
// rotation axis (north positive), x toward the vernal point, y completing a
// right-handed basis.
struct OrbitalConstants {
  double omega_y;      // rad/s, mean orbital rate (tropical year)
  double theta_e;      // rad, ecliptic inclination
  double d_earth_sun;  // m
  double r_earth;      // m
  double omega_d;      // rad/s, spin rate (sidereal day)

  bool operator==(const OrbitalConstants&) const = default;

  static OrbitalConstants defaults();
};

inline constexpr double kTropicalYearS = 365.2422 * 86400.0;
inline constexpr double kSiderealDayS = 86164.1;

// Solar-system velocity with respect to the microwave-background frame.
inline constexpr double kCmbSpeed = 371e3;  // m/s

struct EquatorialDirection {
  double right_ascension;  // rad, [0, 2pi)
  double declination;      // rad, [-pi/2, +pi/2]

  bool operator==(const EquatorialDirection&) const = default;
};

// Normalizes right ascension mod 2pi; throws DomainError when |dec| > pi/2.
EquatorialDirection make_direction(double right_ascension, double declination);

EquatorialDirection cmb_apex();  // 11.20 h, -7.22 deg

Eigen::Vector3d direction_unit_vector(const EquatorialDirection& d);

struct FrameVelocity {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();  // m/s
  std::string label;
};

// UTC instant plus elapsed time since the most recent Spring equinox.
struct Epoch {
  UtcInstant utc;
  double seconds_since_equinox = 0.0;
};

// Table lookup; coverage 1990-2031, DomainError outside.
Epoch make_epoch(UtcInstant t);

double theta0(const Epoch& epoch, const OrbitalConstants& c);

// Greenwich mean sidereal angle, linear polynomial about J2000.  Good to well
// under 1e-3 rad across 1990-2030, which is all the baseline geometry needs.
double gmst_rad(UtcInstant t);

FrameVelocity sun_cmb_velocity(const EquatorialDirection& apex, double speed);

FrameVelocity earth_sun_velocity(const Epoch& epoch, const OrbitalConstants& c);

// Velocity of a surface site due to the spin, given the site latitude and the
// instantaneous angle phi of its meridian from the vernal point.
FrameVelocity site_spin_velocity(double latitude, double phi,
                                 const OrbitalConstants& c);

// Plain vector sum.  Each part must be slower than kGalileanGuard.
FrameVelocity compose_galilean(std::span<const FrameVelocity> parts);

// The boost formulas take the frame's velocity relative to the laboratory,
// the composition chain produces the laboratory's velocity in the frame.
Eigen::Vector3d frame_relative_to_lab(const Eigen::Vector3d& lab_in_frame);

}  // namespace qis
