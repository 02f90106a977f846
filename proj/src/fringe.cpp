#include "qis/fringe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qis/errors.hpp"

namespace qis {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::uint64_t poisson_chunk(double lambda, std::uint64_t& state) {
  const double u = uniform01(state);
  double p = std::exp(-lambda);
  double cdf = p;
  std::uint64_t k = 0;
  // lambda <= 500 here, so the tail past 12*lambda + 64 is below 1e-300.
  const auto k_max = static_cast<std::uint64_t>(12.0 * lambda + 64.0);
  while (u > cdf && k < k_max) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  return mix64(state);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53;
}

std::uint64_t bin_stream_state(std::uint64_t seed, std::uint64_t bin_index) {
  // Scrambling the bin index keeps neighbouring bins' state sequences from
  // overlapping, which a plain additive offset would not.
  return mix64(seed ^ ((bin_index + 1) * 0x9E3779B97F4A7C15ull));
}

std::uint64_t poisson_sample(double lambda, std::uint64_t& state) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw DomainError("poisson mean must be finite and >= 0");
  std::uint64_t total = 0;
  while (lambda > 500.0) {
    total += poisson_chunk(500.0, state);
    lambda -= 500.0;
  }
  return total + poisson_chunk(lambda, state);
}

double expected_bin_rate(const EvalPoint& p, const FringeModel& m,
                         const InfluenceHypothesis& h, double t_center) {
  // The modulation survives only where the hypothesized influence speed
  // reaches the uncapped |v_qi_min(t)|; a simultaneity pole is unreachable
  // for any finite speed.
  double v = m.v_collapse;
  if (h.unbounded || (!p.raw.unbounded && h.speed >= std::abs(p.raw.v)))
    v = m.visibility;
  const double omega = 2.0 * kPi / m.fringe_period;
  return m.base_rate * m.bin_width *
         (1.0 + v * std::cos(omega * t_center + m.phase));
}

std::vector<BinCount> simulate_counts(const ExperimentRecord& rec,
                                      const FringeModel& m,
                                      const InfluenceHypothesis& h,
                                      std::uint64_t seed) {
  if (!(m.base_rate >= 0.0)) throw DomainError("base rate must be >= 0");
  if (!(m.visibility >= 0.0 && m.visibility <= 1.0))
    throw DomainError("visibility must lie in [0, 1]");
  if (!(m.v_collapse >= 0.0 && m.v_collapse <= m.visibility))
    throw DomainError("collapse visibility must lie in [0, visibility]");
  if (!(m.bin_width > 0.0)) throw DomainError("bin width must be > 0");
  if (!(m.fringe_period > 0.0)) throw DomainError("fringe period must be > 0");
  if (!h.unbounded && !(h.speed > kSpeedOfLight))
    throw DomainError("finite influence-speed hypothesis must exceed c");
  const double duration = rec.duration();
  if (m.bin_width > duration)
    throw DomainError("bin width exceeds the record window");

  const EvalContext ctx(rec);
  const auto n =
      static_cast<std::size_t>(std::floor(duration / m.bin_width + 1e-9));
  std::vector<BinCount> counts;
  counts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t_start = static_cast<double>(k) * m.bin_width;
    const double t_center = t_start + m.bin_width / 2.0;
    const double lambda =
        expected_bin_rate(ctx.sample_at(t_center), m, h, t_center);
    std::uint64_t state = bin_stream_state(seed, k);
    counts.push_back({t_start, poisson_sample(lambda, state)});
  }
  return counts;
}

CollapseReport detect_collapse(const std::vector<BinCount>& counts,
                               const FringeModel& m) {
  if (!(m.bin_width > 0.0)) throw DomainError("bin width must be > 0");
  if (!(m.fringe_period > 0.0)) throw DomainError("fringe period must be > 0");
  if (!(m.visibility >= 0.0 && m.visibility <= 1.0))
    throw DomainError("visibility must lie in [0, 1]");
  const std::size_t n = counts.size();
  if (static_cast<double>(n) * m.bin_width < m.fringe_period)
    throw DomainError("need at least one full fringe period of bins");
  const auto w = static_cast<std::size_t>(
      std::lround(m.fringe_period / (2.0 * m.bin_width)));
  if (w < 4)
    throw DomainError("need at least 4 bins per half fringe period");

  const double omega = 2.0 * kPi / m.fringe_period;
  CollapseReport rep;
  rep.windows.reserve(n - w + 1);
  rep.min_visibility = 2.0;

  for (std::size_t i = 0; i + w <= n; ++i) {
    Eigen::Matrix3d xtx = Eigen::Matrix3d::Zero();
    Eigen::Vector3d xty = Eigen::Vector3d::Zero();
    for (std::size_t j = i; j < i + w; ++j) {
      const double t = counts[j].t_start + m.bin_width / 2.0;
      const Eigen::Vector3d x{1.0, std::cos(omega * t), std::sin(omega * t)};
      xtx += x * x.transpose();
      xty += x * static_cast<double>(counts[j].count);
    }
    const Eigen::Vector3d coef = xtx.ldlt().solve(xty);
    const double a = coef[0];
    const double amp = std::hypot(coef[1], coef[2]);
    const double a_eff = std::max(a, 1e-9);
    const double vis = std::min(amp / a_eff, 1.2);

    // Poisson counts: Var(y) ~ max(1, a), then the delta method on
    // V = sqrt(b^2 + c^2) / a.
    const double sigma2 = std::max(1.0, a);
    const Eigen::Matrix3d cov = sigma2 * xtx.inverse();
    double var_v;
    if (amp > 1e-12) {
      const Eigen::Vector3d grad{-vis / a_eff, coef[1] / (a_eff * amp),
                                 coef[2] / (a_eff * amp)};
      var_v = grad.dot(cov * grad);
    } else {
      var_v = 0.5 * (cov(1, 1) + cov(2, 2)) / (a_eff * a_eff);
    }
    const double sigma = std::sqrt(std::max(var_v, 1e-24));

    const bool flagged =
        m.visibility > 0.0 && vis < m.visibility / 2.0 - 3.0 * sigma;
    const double t0 = counts[i].t_start;
    const double t1 = counts[i + w - 1].t_start + m.bin_width;
    rep.windows.push_back({t0, t1, vis, sigma, flagged});
    rep.min_visibility = std::min(rep.min_visibility, vis);
    if (flagged) {
      if (!rep.collapsed) {
        rep.collapsed = true;
        rep.t_begin = t0;
        rep.t_end = t1;
      } else {
        rep.t_begin = std::min(rep.t_begin, t0);
        rep.t_end = std::max(rep.t_end, t1);
      }
    }
  }
  return rep;
}

}  // namespace qis
