#include "qis/bound.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "qis/errors.hpp"

namespace qis {

QiSpeed v_qi_min_lab(double d_ab, double tau) {
  if (!(d_ab > 0.0)) throw DomainError("detector separation must be > 0");
  if (tau == 0.0) return {0.0, true};
  return {-d_ab / tau, false};
}

QiSpeed v_qi_min_boosted(double r, double beta_x) {
  if (!(std::abs(r) < 1.0))
    throw DomainError("alignment ratio |r| must be < 1");
  if (!(std::abs(beta_x) < 1.0))
    throw DomainError("|beta_x| must be < 1");
  const double denom = r + beta_x;
  if (std::abs(denom) < 1e-15) return {0.0, true};
  return {-kSpeedOfLight * (1.0 + r * beta_x) / denom, false};
}

double localization_ceiling(double d_ab, double delta_tau) {
  if (!(d_ab > 0.0)) throw DomainError("detector separation must be > 0");
  if (!(delta_tau > 0.0)) throw DomainError("localization width must be > 0");
  return d_ab / delta_tau;
}

AlignmentAssessment classify_alignment(double r_max, double beta_x_max) {
  if (r_max < 0.0 || beta_x_max < 0.0)
    throw DomainError("classify_alignment expects magnitudes");
  if (r_max > beta_x_max) return {false, kSpeedOfLight / r_max};
  return {true, 0.0};
}

EvalContext::EvalContext(const ExperimentRecord& rec) : rec_(rec) {
  duration_ = rec_.duration();
  if (!(duration_ > 0.0))
    throw DomainError("record window must end after it starts");
  ceiling_ = localization_ceiling(rec_.baseline.d_ab, rec_.alignment.delta_tau);
  lab_frame_ = rec_.frame.kind == FrameSpec::Kind::lab;
  if (lab_frame_) return;

  const Epoch ep = make_epoch(rec_.start_utc);
  theta0_ = theta0(ep, rec_.constants);
  const FrameVelocity orbital = earth_sun_velocity(ep, rec_.constants);
  const FrameVelocity candidate =
      rec_.frame.kind == FrameSpec::Kind::cmb
          ? sun_cmb_velocity(cmb_apex(), kCmbSpeed)
          : sun_cmb_velocity(rec_.frame.direction, rec_.frame.speed);
  const FrameVelocity spin0 = site_spin_velocity(
      rec_.baseline.a.latitude, rec_.baseline.phi0, rec_.constants);
  // Applies the Galilean guard to every part; the spin magnitude is constant
  // over the run, so checking it once at phi0 covers all t.
  const FrameVelocity parts[] = {spin0, orbital, candidate};
  compose_galilean(parts);
  static_part_ = orbital.v + candidate.v;
  spin_speed_ = rec_.constants.omega_d * rec_.constants.r_earth *
                std::cos(rec_.baseline.a.latitude);
}

Eigen::Vector3d EvalContext::lab_velocity_in_frame(double t_rel) const {
  if (lab_frame_) return Eigen::Vector3d::Zero();
  const double phi = rec_.baseline.phi0 + rec_.constants.omega_d * t_rel;
  return Eigen::Vector3d{-spin_speed_ * std::sin(phi),
                         spin_speed_ * std::cos(phi), 0.0} +
         static_part_;
}

EvalPoint EvalContext::sample_at(double t_rel) const {
  const auto& al = rec_.alignment;
  const double tau =
      al.tau_initial + (al.tau_final - al.tau_initial) * (t_rel / duration_);
  const double r = kSpeedOfLight * tau / rec_.baseline.d_ab;
  double bx = 0.0;
  if (!lab_frame_) {
    const Eigen::Vector3d v_frame =
        frame_relative_to_lab(lab_velocity_in_frame(t_rel));
    bx = beta_x(rec_.baseline, t_rel, v_frame, rec_.constants);
  }
  const QiSpeed raw = v_qi_min_boosted(r, bx);
  double clamped;
  bool capped;
  if (raw.unbounded) {
    clamped = ceiling_;  // sign is undefined exactly at the pole
    capped = true;
  } else if (std::abs(raw.v) > ceiling_) {
    clamped = std::copysign(ceiling_, raw.v);
    capped = true;
  } else {
    clamped = raw.v;
    capped = false;
  }
  return {t_rel, r, bx, raw, clamped, capped};
}

BoundSeries evaluate_series(const ExperimentRecord& rec, double step) {
  if (!(step > 0.0)) throw DomainError("sampling step must be > 0");
  const double duration = rec.duration();
  if (!(duration > 0.0))
    throw DomainError("record window must end after it starts");
  if (step > duration)
    throw DomainError("sampling step exceeds the record window");
  if (!(rec.fringe_period > 0.0))
    throw DomainError("fringe period must be > 0");

  const EvalContext ctx(rec);
  // tau(t) is affine, so checking |r| < 1 at the ends covers the window.
  const double r0 =
      kSpeedOfLight * rec.alignment.tau_initial / rec.baseline.d_ab;
  const double r1 = kSpeedOfLight * rec.alignment.tau_final / rec.baseline.d_ab;
  if (!(std::abs(r0) < 1.0 && std::abs(r1) < 1.0))
    throw DomainError("|r| must stay below 1 across the window");

  BoundSeries out;
  out.step = step;
  out.ceiling = ctx.ceiling();
  const auto n =
      static_cast<std::size_t>(std::floor(duration / step + 1e-9)) + 1;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const EvalPoint p = ctx.sample_at(static_cast<double>(i) * step);
    out.samples.push_back({p.t, p.r, p.beta_x, p.v_clamped, p.capped});
  }

  const auto g_at = [&ctx](double t) {
    const EvalPoint p = ctx.sample_at(t);
    return p.r + p.beta_x;
  };
  for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
    const auto& s1 = out.samples[i];
    const auto& s2 = out.samples[i + 1];
    const double g1 = s1.r + s1.beta_x;
    const double g2 = s2.r + s2.beta_x;
    if (g1 == 0.0) {
      out.crossings.push_back(s1.t);
      continue;
    }
    if (g1 * g2 < 0.0) {
      // Bisect to 1e-3 s; with |dg/dt| ~ 1e-7 /s that leaves |g| far below
      // the 1e-9 the crossings promise.
      double lo = s1.t, hi = s2.t, glo = g1;
      while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g_at(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((glo < 0.0) != (gm < 0.0))
          hi = mid;
        else {
          lo = mid;
          glo = gm;
        }
      }
      out.crossings.push_back(0.5 * (lo + hi));
    }
  }
  if (!out.samples.empty()) {
    const auto& last = out.samples.back();
    if (last.r + last.beta_x == 0.0) out.crossings.push_back(last.t);
  }

  out.bound = extract_bound(out, rec.fringe_period);
  return out;
}

double extract_bound(const BoundSeries& series, double fringe_period) {
  if (!(fringe_period > 0.0)) throw DomainError("fringe period must be > 0");
  const auto& s = series.samples;
  if (s.size() < 2 || !(series.step > 0.0))
    throw DomainError("series too short to slide a window over");
  const double span = s.back().t - s.front().t;
  const double half = fringe_period / 2.0;
  if (half > span + 1e-9)
    throw DomainError("half a fringe period exceeds the series span");

  // Conservative reading: the influence hypothesis is excluded only if it
  // would blank at least half a fringe, so take the worst (min) sample per
  // window and the best window.  Monotonic deque keeps it O(n).
  const auto m =
      static_cast<std::size_t>(std::floor(half / series.step + 1e-9));
  double best = 0.0;
  std::deque<std::size_t> q;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = std::abs(s[i].v_qi_min);
    while (!q.empty() && std::abs(s[q.back()].v_qi_min) >= v) q.pop_back();
    q.push_back(i);
    if (i >= m) {
      while (q.front() + m < i) q.pop_front();
      best = std::max(best, std::abs(s[q.front()].v_qi_min));
    }
  }
  return std::min(best, series.ceiling);
}

PlanResult plan(const PlanInput& in, const OrbitalConstants& c) {
  if (!(in.d_ab > 0.0)) throw DomainError("planned separation must be > 0");
  if (!(in.delta_tau > 0.0))
    throw DomainError("planned localization width must be > 0");
  if (!(in.fringe_period > 0.0))
    throw DomainError("planned fringe period must be > 0");
  if (in.achievable_alignment < 0.0)
    throw DomainError("achievable alignment is a magnitude, must be >= 0");
  if (in.frame_speed < 0.0 || in.frame_speed >= kGalileanGuard)
    throw DomainError("frame speed must lie in [0, 0.01 c)");

  PlanResult out{};
  out.ceiling = localization_ceiling(in.d_ab, in.delta_tau);
  const double beta = in.frame_speed / kSpeedOfLight;
  out.required_r = beta;
  const double achievable_r = in.achievable_alignment / in.d_ab;
  out.simultaneity_reachable = beta > 0.0 && achievable_r < beta;
  if (beta > 0.0) {
    // The spin sweeps beta_x at up to beta*omega_d; the worst sample of the
    // best-centred half-fringe window sits a quarter fringe from the
    // crossing.  Same convention as extract_bound.
    out.rotation_bound =
        4.0 * kSpeedOfLight / (beta * c.omega_d * in.fringe_period);
    out.required_fringe_time =
        4.0 * kSpeedOfLight / (beta * c.omega_d * out.ceiling);
    out.attainable_bound = std::min(out.ceiling, *out.rotation_bound);
  } else {
    out.attainable_bound = out.ceiling;
  }
  return out;
}

}  // namespace qis
