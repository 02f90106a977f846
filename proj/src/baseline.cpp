#include "qis/baseline.hpp"

#include <cmath>

#include "qis/errors.hpp"

namespace qis {

double colatitude(const Station& s) {
  if (!(std::abs(s.latitude) <= kPi / 2.0))
    throw DomainError("station '" + s.name + "': latitude out of [-pi/2, pi/2]");
  return kPi / 2.0 - s.latitude;
}

double vernal_hour_angle(const Station& s, UtcInstant t) {
  double a = std::fmod(gmst_rad(t) + s.longitude, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

Eigen::Vector3d unit_baseline(const Baseline& b, double t_rel,
                              const OrbitalConstants& c) {
  const double tha = colatitude(b.a);
  const double thb = colatitude(b.b);
  const double pa = b.phi0 + c.omega_d * t_rel;
  const double pb = pa + (b.b.longitude - b.a.longitude);
  const Eigen::Vector3d ua{std::sin(tha) * std::cos(pa),
                           std::sin(tha) * std::sin(pa), std::cos(tha)};
  const Eigen::Vector3d ub{std::sin(thb) * std::cos(pb),
                           std::sin(thb) * std::sin(pb), std::cos(thb)};
  const Eigen::Vector3d diff = ub - ua;
  const double n = diff.norm();
  if (!(n > 1e-12))
    throw DomainError("degenerate baseline: stations '" + b.a.name + "' and '" +
                      b.b.name + "' coincide");
  return diff / n;
}

double beta_x(const Baseline& b, double t_rel,
              const Eigen::Vector3d& v_frame_rel_lab,
              const OrbitalConstants& c) {
  return v_frame_rel_lab.dot(unit_baseline(b, t_rel, c)) / kSpeedOfLight;
}

}  // namespace qis
