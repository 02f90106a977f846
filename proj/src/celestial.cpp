#include "qis/celestial.hpp"

#include <cmath>

#include "qis/errors.hpp"

namespace qis {
namespace {

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

// Mean Spring-equinox instants, unix seconds: the true 2000-03-20 07:35 UTC
// equinox stepped by exactly one tropical year.  Stays within ~20 min of the
// apparent instants across the whole range, and keeps the orbital phase
// exactly periodic in one tropical year.
struct EquinoxEntry {
  int year;
  double unix_s;
};

constexpr EquinoxEntry kEquinoxTable[] = {
    {1990, 637968439.20},   // 1990-03-20T21:27:19Z
    {1991, 669525365.28},   // 1991-03-21T03:16:05Z
    {1992, 701082291.36},   // 1992-03-20T09:04:51Z
    {1993, 732639217.44},   // 1993-03-20T14:53:37Z
    {1994, 764196143.52},   // 1994-03-20T20:42:23Z
    {1995, 795753069.60},   // 1995-03-21T02:31:09Z
    {1996, 827309995.68},   // 1996-03-20T08:19:55Z
    {1997, 858866921.76},   // 1997-03-20T14:08:41Z
    {1998, 890423847.84},   // 1998-03-20T19:57:27Z
    {1999, 921980773.92},   // 1999-03-21T01:46:13Z
    {2000, 953537700.00},   // 2000-03-20T07:35:00Z
    {2001, 985094626.08},   // 2001-03-20T13:23:46Z
    {2002, 1016651552.16},  // 2002-03-20T19:12:32Z
    {2003, 1048208478.24},  // 2003-03-21T01:01:18Z
    {2004, 1079765404.32},  // 2004-03-20T06:50:04Z
    {2005, 1111322330.40},  // 2005-03-20T12:38:50Z
    {2006, 1142879256.48},  // 2006-03-20T18:27:36Z
    {2007, 1174436182.56},  // 2007-03-21T00:16:22Z
    {2008, 1205993108.64},  // 2008-03-20T06:05:08Z
    {2009, 1237550034.72},  // 2009-03-20T11:53:54Z
    {2010, 1269106960.80},  // 2010-03-20T17:42:40Z
    {2011, 1300663886.88},  // 2011-03-20T23:31:26Z
    {2012, 1332220812.96},  // 2012-03-20T05:20:12Z
    {2013, 1363777739.04},  // 2013-03-20T11:08:59Z
    {2014, 1395334665.12},  // 2014-03-20T16:57:45Z
    {2015, 1426891591.20},  // 2015-03-20T22:46:31Z
    {2016, 1458448517.28},  // 2016-03-20T04:35:17Z
    {2017, 1490005443.36},  // 2017-03-20T10:24:03Z
    {2018, 1521562369.44},  // 2018-03-20T16:12:49Z
    {2019, 1553119295.52},  // 2019-03-20T22:01:35Z
    {2020, 1584676221.60},  // 2020-03-20T03:50:21Z
    {2021, 1616233147.68},  // 2021-03-20T09:39:07Z
    {2022, 1647790073.76},  // 2022-03-20T15:27:53Z
    {2023, 1679346999.84},  // 2023-03-20T21:16:39Z
    {2024, 1710903925.92},  // 2024-03-20T03:05:25Z
    {2025, 1742460852.00},  // 2025-03-20T08:54:12Z
    {2026, 1774017778.08},  // 2026-03-20T14:42:58Z
    {2027, 1805574704.16},  // 2027-03-20T20:31:44Z
    {2028, 1837131630.24},  // 2028-03-20T02:20:30Z
    {2029, 1868688556.32},  // 2029-03-20T08:09:16Z
    {2030, 1900245482.40},  // 2030-03-20T13:58:02Z
};

}  // namespace

OrbitalConstants OrbitalConstants::defaults() {
  return {
      2.0 * kPi / kTropicalYearS,   // omega_y
      23.5 * kPi / 180.0,           // theta_e
      1.496e11,                     // d_earth_sun
      6.371e6,                      // r_earth
      2.0 * kPi / kSiderealDayS,    // omega_d
  };
}

EquatorialDirection make_direction(double right_ascension, double declination) {
  if (!(std::abs(declination) <= kPi / 2.0))
    throw DomainError("declination out of [-pi/2, pi/2]");
  return {wrap_2pi(right_ascension), declination};
}

EquatorialDirection cmb_apex() {
  return make_direction(11.20 * 15.0 * kPi / 180.0, -7.22 * kPi / 180.0);
}

Eigen::Vector3d direction_unit_vector(const EquatorialDirection& d) {
  const double theta = kPi / 2.0 - d.declination;  // colatitude of the apex
  return {std::cos(d.right_ascension) * std::sin(theta),
          std::sin(d.right_ascension) * std::sin(theta), std::cos(theta)};
}

Epoch make_epoch(UtcInstant t) {
  const EquinoxEntry* recent = nullptr;
  for (const auto& e : kEquinoxTable)
    if (e.unix_s <= t.unix_s && (!recent || e.unix_s > recent->unix_s))
      recent = &e;
  if (!recent)
    throw DomainError("epoch " + format_utc(t) +
                      " precedes the equinox table (1990-2030)");
  const double dt = t.unix_s - recent->unix_s;
  if (dt >= kTropicalYearS + 1.0)
    throw DomainError("epoch " + format_utc(t) +
                      " is beyond the equinox table (1990-2030)");
  return {t, dt};
}

double theta0(const Epoch& epoch, const OrbitalConstants& c) {
  return c.omega_y * epoch.seconds_since_equinox;
}

double gmst_rad(UtcInstant t) {
  const double d = julian_date(t) - 2451545.0;
  const double deg = 280.46061837 + 360.98564736629 * d;
  return wrap_2pi(deg * kPi / 180.0);
}

FrameVelocity sun_cmb_velocity(const EquatorialDirection& apex, double speed) {
  if (speed < 0.0) throw DomainError("frame speed must be non-negative");
  return {speed * direction_unit_vector(apex), "sun_wrt_cmb"};
}

FrameVelocity earth_sun_velocity(const Epoch& epoch,
                                 const OrbitalConstants& c) {
  const double th = theta0(epoch, c);
  const double v = c.omega_y * c.d_earth_sun;
  return {{-v * std::sin(th), v * std::cos(th) * std::cos(c.theta_e),
           -v * std::cos(th) * std::sin(c.theta_e)},
          "earth_wrt_sun"};
}

FrameVelocity site_spin_velocity(double latitude, double phi,
                                 const OrbitalConstants& c) {
  if (!(std::abs(latitude) <= kPi / 2.0))
    throw DomainError("latitude out of [-pi/2, pi/2]");
  // omega x r: eastward tangent, no polar component.
  const double v = c.omega_d * c.r_earth * std::cos(latitude);
  return {{-v * std::sin(phi), v * std::cos(phi), 0.0}, "site_wrt_earth"};
}

FrameVelocity compose_galilean(std::span<const FrameVelocity> parts) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (const auto& p : parts) {
    if (p.v.norm() >= kGalileanGuard)
      throw DomainError("velocity part '" + p.label +
                        "' is outside the Galilean regime (>= 0.01 c)");
    sum += p.v;
  }
  return {sum, "composite"};
}

Eigen::Vector3d frame_relative_to_lab(const Eigen::Vector3d& lab_in_frame) {
  return -lab_in_frame;
}

}  // namespace qis
