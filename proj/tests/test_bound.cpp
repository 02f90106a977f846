#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qis/bound.hpp"
#include "qis/config.hpp"
#include "qis/errors.hpp"
#include "support.hpp"

using namespace qis;
using qis::test::rel_ok;

TEST_CASE("laboratory-frame minimum influence speed") {
  const double tau = 0.002 / kSpeedOfLight;  // 2 mm of arm imbalance
  auto v = v_qi_min_lab(10600.0, tau);
  CHECK_FALSE(v.unbounded);
  CHECK(rel_ok(v.v / kSpeedOfLight, -5.3e6, 1e-12));

  auto flipped = v_qi_min_lab(10600.0, -tau);
  CHECK(flipped.v == -v.v);

  auto pole = v_qi_min_lab(10600.0, 0.0);
  CHECK(pole.unbounded);

  CHECK_THROWS_AS(v_qi_min_lab(0.0, tau), DomainError);
  CHECK_THROWS_AS(v_qi_min_lab(-1.0, tau), DomainError);
}

TEST_CASE("boosted speed reduces to the laboratory one at beta_x = 0") {
  const double d = 10600.0;
  for (double ctau : {0.002, -0.03, 0.5}) {
    const double tau = ctau / kSpeedOfLight;
    const double r = ctau / d;
    CHECK(rel_ok(v_qi_min_boosted(r, 0.0).v, v_qi_min_lab(d, tau).v, 1e-12));
  }
}

TEST_CASE("boosted speed validates and hits the simultaneity pole") {
  CHECK_THROWS_AS(v_qi_min_boosted(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(v_qi_min_boosted(-1.5, 0.0), DomainError);
  CHECK_THROWS_AS(v_qi_min_boosted(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(v_qi_min_boosted(0.0, -2.0), DomainError);

  CHECK(v_qi_min_boosted(1e-4, -1e-4).unbounded);
  CHECK(v_qi_min_boosted(1e-16, 0.0).unbounded);
  auto close = v_qi_min_boosted(2e-15, 0.0);
  CHECK_FALSE(close.unbounded);
  CHECK(std::abs(close.v) > kSpeedOfLight);
}

TEST_CASE("any finite boosted answer is superluminal") {
  // (1 + r b)^2 - (r + b)^2 = (1 - r^2)(1 - b^2) > 0 inside the open square.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  int violations = 0;
  for (int i = 0; i < 100000; ++i) {
    auto v = v_qi_min_boosted(u(rng), u(rng));
    if (!v.unbounded && std::abs(v.v) <= kSpeedOfLight) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("alignment classification") {
  auto bad = classify_alignment(1e-3, 5e-4);
  CHECK_FALSE(bad.good);
  CHECK(rel_ok(bad.attainable_bound / kSpeedOfLight, 1e3, 1e-12));

  CHECK(classify_alignment(5e-4, 1e-3).good);
  CHECK(classify_alignment(0.0, 1e-3).good);
  CHECK(classify_alignment(1e-3, 1e-3).good);
  CHECK(classify_alignment(1e-3, 1e-3).attainable_bound == 0.0);

  CHECK_THROWS_AS(classify_alignment(-1e-3, 1e-3), DomainError);
  CHECK_THROWS_AS(classify_alignment(1e-3, -1e-3), DomainError);
}

TEST_CASE("localization ceiling") {
  double ceil = localization_ceiling(10600.0, 90e-12);
  CHECK(rel_ok(ceil / kSpeedOfLight, 392864.3787889347, 1e-12));
  CHECK(localization_ceiling(10600.0, 45e-12) == doctest::Approx(2.0 * ceil).epsilon(1e-15));
  // Separation of exactly c * delta_tau pins the ceiling at c.
  CHECK(localization_ceiling(kSpeedOfLight * 0.25, 0.25) == kSpeedOfLight);
  CHECK_THROWS_AS(localization_ceiling(0.0, 1e-12), DomainError);
  CHECK_THROWS_AS(localization_ceiling(10.0, 0.0), DomainError);
}

TEST_CASE("fixture series") {
  auto cfg = qis::test::geneva();
  auto series = evaluate_series(cfg.record, 10.0);

  REQUIRE(series.samples.size() == 5401);
  CHECK(series.samples[0].t == 0.0);
  CHECK(series.samples[1].t == 10.0);
  CHECK(series.samples.back().t == 54000.0);
  CHECK(series.step == 10.0);

  CHECK(rel_ok(series.samples.front().r, 1.8867924528301886e-07, 1e-12));
  CHECK(rel_ok(series.samples.back().r, 1.320754716981132e-06, 1e-12));
  CHECK(rel_ok(series.samples.front().beta_x, -0.0003418529151615512, 1e-9));

  CHECK(rel_ok(series.samples.front().v_qi_min / kSpeedOfLight,
               2926.8500908610463, 1e-9));
  CHECK(rel_ok(series.samples.back().v_qi_min / kSpeedOfLight,
               -1245.819747911879, 1e-9));

  REQUIRE(series.crossings.size() == 1);
  CHECK(std::abs(series.crossings[0] - 41231.56084733675) < 2e-3);

  // The reported root really is a simultaneity crossing.
  EvalContext ctx(cfg.record);
  auto at = ctx.sample_at(series.crossings[0]);
  CHECK(std::abs(at.r + at.beta_x) < 1e-9);

  int capped = 0;
  for (const auto& s : series.samples) {
    CHECK(std::abs(s.v_qi_min) <= series.ceiling);
    if (s.capped) {
      ++capped;
      CHECK(std::abs(s.v_qi_min) == series.ceiling);
    }
  }
  CHECK(capped > 0);

  CHECK(rel_ok(series.ceiling / kSpeedOfLight, 392864.3787889347, 1e-12));
  CHECK(rel_ok(series.bound / kSpeedOfLight, 14440.5352182782, 1e-9));
  CHECK(series.bound <= series.ceiling);
}

TEST_CASE("bound is monotone in the fringe period") {
  auto cfg = qis::test::geneva();
  auto series = evaluate_series(cfg.record, 10.0);

  double b600 = extract_bound(series, 600.0);
  double b3600 = extract_bound(series, 3600.0);
  double b36000 = extract_bound(series, 36000.0);
  CHECK(b600 >= b3600);
  CHECK(b3600 >= b36000);
  CHECK(b3600 == series.bound);

  // A fringe faster than one step degenerates to single-sample windows, and
  // the capped samples push the bound to the ceiling.
  CHECK(extract_bound(series, 10.0) == series.ceiling);

  CHECK_THROWS_AS(extract_bound(series, 120000.0), DomainError);
  CHECK_THROWS_AS(extract_bound(series, 0.0), DomainError);
}

TEST_CASE("series input validation") {
  auto cfg = qis::test::geneva();
  CHECK_THROWS_AS(evaluate_series(cfg.record, 0.0), DomainError);
  CHECK_THROWS_AS(evaluate_series(cfg.record, -5.0), DomainError);
  CHECK_THROWS_AS(evaluate_series(cfg.record, 60000.0), DomainError);

  auto bad = cfg.record;
  bad.alignment.tau_final = 2.0 * bad.baseline.d_ab / kSpeedOfLight;
  CHECK_THROWS_AS(evaluate_series(bad, 10.0), DomainError);

  auto inverted = cfg.record;
  inverted.end_utc = inverted.start_utc;
  CHECK_THROWS_AS(evaluate_series(inverted, 10.0), DomainError);
}

TEST_CASE("laboratory preset gives a flat subluminal-denominator-free series") {
  auto cfg = qis::test::geneva();
  auto rec = cfg.record;
  rec.frame.kind = FrameSpec::Kind::lab;
  rec.alignment.tau_initial = 0.05 / kSpeedOfLight;  // 5 cm, below the ceiling
  rec.alignment.tau_final = rec.alignment.tau_initial;

  auto series = evaluate_series(rec, 100.0);
  REQUIRE(series.samples.size() == 541);
  for (const auto& s : series.samples) {
    CHECK(s.beta_x == 0.0);
    CHECK(s.v_qi_min == series.samples[0].v_qi_min);
    CHECK_FALSE(s.capped);
  }
  double r = series.samples[0].r;
  CHECK(rel_ok(series.samples[0].v_qi_min, -kSpeedOfLight / r, 1e-12));
  CHECK(series.crossings.empty());
  CHECK(series.bound == std::abs(series.samples[0].v_qi_min));
}

TEST_CASE("planner on the fixture numbers") {
  auto c = OrbitalConstants::defaults();
  PlanInput in{10600.0, 0.002, 90e-12, 3600.0, 400883.74737872585};
  auto out = plan(in, c);

  CHECK(out.required_r == in.frame_speed / kSpeedOfLight);
  CHECK(rel_ok(out.ceiling / kSpeedOfLight, 392864.3787889347, 1e-12));
  CHECK(out.simultaneity_reachable);

  REQUIRE(out.rotation_bound.has_value());
  REQUIRE(out.required_fringe_time.has_value());
  CHECK(rel_ok(*out.required_fringe_time, 104.41576619246942, 1e-9));
  // bound(T) * T is constant, so it can be cross-checked against the fringe
  // time that would push the rotation limit up to the ceiling.
  CHECK(rel_ok(*out.rotation_bound * in.fringe_period,
               out.ceiling * *out.required_fringe_time, 1e-12));
  CHECK(out.attainable_bound == *out.rotation_bound);
  CHECK(out.attainable_bound < out.ceiling);
}

TEST_CASE("planner without any frame motion") {
  auto c = OrbitalConstants::defaults();
  PlanInput in{10600.0, 0.002, 90e-12, 3600.0, 0.0};
  auto out = plan(in, c);
  CHECK(out.required_r == 0.0);
  CHECK_FALSE(out.rotation_bound.has_value());
  CHECK_FALSE(out.required_fringe_time.has_value());
  CHECK(out.attainable_bound == out.ceiling);
  CHECK_FALSE(out.simultaneity_reachable);
}

TEST_CASE("planner input validation") {
  auto c = OrbitalConstants::defaults();
  PlanInput ok{10600.0, 0.002, 90e-12, 3600.0, 371e3};
  auto bad = ok;
  bad.d_ab = 0.0;
  CHECK_THROWS_AS(plan(bad, c), DomainError);
  bad = ok;
  bad.delta_tau = -1e-12;
  CHECK_THROWS_AS(plan(bad, c), DomainError);
  bad = ok;
  bad.fringe_period = 0.0;
  CHECK_THROWS_AS(plan(bad, c), DomainError);
  bad = ok;
  bad.achievable_alignment = -0.1;
  CHECK_THROWS_AS(plan(bad, c), DomainError);
  bad = ok;
  bad.frame_speed = 0.02 * kSpeedOfLight;
  CHECK_THROWS_AS(plan(bad, c), DomainError);
  bad = ok;
  bad.frame_speed = -1.0;
  CHECK_THROWS_AS(plan(bad, c), DomainError);
}

TEST_CASE("randomized records keep the bound under the ceiling") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-1.2, 1.2);
  std::uniform_real_distribution<double> lon(-kPi, kPi);
  std::uniform_real_distribution<double> sep(1e3, 5e4);
  std::uniform_real_distribution<double> ctau(-0.5, 0.5);
  std::uniform_real_distribution<double> dtau(1e-12, 1e-9);
  std::uniform_real_distribution<double> startu(8e8, 1.7e9);  // 1995..2023
  std::uniform_real_distribution<double> dur(3600.0, 86400.0);
  std::uniform_real_distribution<double> spd(0.0, 2.9e6);
  std::uniform_real_distribution<double> ra(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> dec(-1.5, 1.5);

  for (int k = 0; k < 20; ++k) {
    ExperimentRecord rec;
    rec.title = "random";
    rec.baseline.a = {"A", lat(rng), lon(rng)};
    rec.baseline.b = {"B", lat(rng), lon(rng)};
    rec.baseline.d_ab = sep(rng);
    rec.start_utc = {startu(rng)};
    rec.baseline.phi0 = vernal_hour_angle(rec.baseline.a, rec.start_utc);
    double duration = dur(rng);
    rec.end_utc = {rec.start_utc.unix_s + duration};
    rec.alignment = {ctau(rng) / kSpeedOfLight, ctau(rng) / kSpeedOfLight,
                     dtau(rng)};
    rec.fringe_period = duration / 4.0;
    rec.frame.kind = FrameSpec::Kind::explicit_;
    rec.frame.speed = spd(rng);
    rec.frame.direction = make_direction(ra(rng), dec(rng));
    rec.constants = OrbitalConstants::defaults();

    auto series = evaluate_series(rec, duration / 200.0);
    CHECK(series.bound <= series.ceiling);
    EvalContext ctx(rec);
    for (double t : series.crossings) {
      auto p = ctx.sample_at(t);
      CHECK(std::abs(p.r + p.beta_x) < 1e-9);
    }
  }
}
