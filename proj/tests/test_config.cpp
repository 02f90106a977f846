#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qis/config.hpp"
#include "qis/errors.hpp"
#include "support.hpp"

using namespace qis;
using qis::test::rel_ok;

namespace {

std::string fixture_text() {
  std::ifstream in(qis::test::fixture_path("geneva_1999.cfg"));
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string replaced(std::string text, const std::string& from,
                     const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

// The thrown message must name the offending [section].key.
void expect_error(const std::string& text, const std::string& needle) {
  try {
    parse_config(text, "t");
    FAIL("expected ConfigError for " << needle);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("fixture parses to the expected record") {
  auto cfg = qis::test::geneva();
  const auto& rec = cfg.record;

  CHECK(rec.title == "geneva_1999");
  CHECK(rec.baseline.a.name == "Bellevue");
  CHECK(rec.baseline.b.name == "Bernex");
  CHECK(rec.baseline.a.latitude ==
        doctest::Approx((46.0 + 15.0 / 60.0) * kPi / 180.0).epsilon(1e-15));
  CHECK(rec.baseline.a.longitude ==
        doctest::Approx((6.0 + 9.0 / 60.0) * kPi / 180.0).epsilon(1e-15));
  CHECK(rec.baseline.b.latitude ==
        doctest::Approx((46.0 + 10.0 / 60.0) * kPi / 180.0).epsilon(1e-15));
  CHECK(rec.baseline.d_ab == 10600.0);

  CHECK(rec.start_utc.unix_s == 928251000.0);
  CHECK(rec.end_utc.unix_s == 928305000.0);
  CHECK(rec.duration() == 54000.0);

  CHECK(rec.alignment.tau_initial == 0.002 / kSpeedOfLight);
  CHECK(rel_ok(rec.alignment.tau_final, 0.014 / kSpeedOfLight, 1e-15));
  CHECK(rel_ok(rec.alignment.delta_tau, 90e-12, 1e-15));
  CHECK(rec.fringe_period == 3600.0);

  CHECK(rec.frame.kind == FrameSpec::Kind::cmb);
  CHECK(rec.constants == OrbitalConstants::defaults());
  CHECK(rel_ok(rec.baseline.phi0, 2.2397081141305564, 1e-12));

  CHECK(cfg.has_simulate);
  CHECK(cfg.simulate.base_rate == 20.0);
  CHECK(cfg.simulate.visibility == 0.9);
  CHECK(cfg.simulate.v_collapse == 0.0);
  CHECK(cfg.simulate.bin_width == 50.0);
  CHECK(cfg.simulate.phase == 0.0);
  CHECK(cfg.simulate.hyp_unbounded);
  REQUIRE(cfg.simulate.seed.has_value());
  CHECK(*cfg.simulate.seed == 1);

  CHECK_FALSE(cfg.has_plan);
  CHECK(cfg.has_scan);
  CHECK(cfg.scan.speeds == std::vector<double>{371000.0});
  CHECK_FALSE(cfg.scan.explicit_directions);
  CHECK(cfg.scan.n_dec == 12);
  CHECK(cfg.scan.n_ra == 24);
}

TEST_CASE("angle grammar") {
  CHECK(parse_angle("46d15m N", "f") ==
        doctest::Approx(46.25 * kPi / 180.0).epsilon(1e-15));
  CHECK(parse_angle("46d15m30s S", "f") ==
        doctest::Approx(-(46.0 + 15.0 / 60.0 + 30.0 / 3600.0) * kPi / 180.0)
            .epsilon(1e-15));
  CHECK(parse_angle("6d05m W", "f") < 0.0);
  CHECK(parse_angle("-7.22 deg", "f") ==
        doctest::Approx(-7.22 * kPi / 180.0).epsilon(1e-15));
  CHECK(parse_angle("1.2 rad", "f") == 1.2);
  CHECK(parse_angle("11.20 h", "f") ==
        doctest::Approx(11.20 * 15.0 * kPi / 180.0).epsilon(1e-15));

  CHECK_THROWS_AS(parse_angle("-5 deg S", "f"), ConfigError);
  CHECK_THROWS_AS(parse_angle("46d70m", "f"), ConfigError);
  CHECK_THROWS_AS(parse_angle("46", "f"), ConfigError);
  CHECK_THROWS_AS(parse_angle("5 parsec", "f"), ConfigError);
  try {
    parse_angle("5 parsec", "myfield");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("myfield") != std::string::npos);
  }
}

TEST_CASE("unit-suffixed scalars") {
  CHECK(parse_length("10.6 km", "f") == doctest::Approx(10600.0).epsilon(1e-15));
  CHECK(parse_length("2 mm", "f") == doctest::Approx(0.002).epsilon(1e-15));
  CHECK(parse_length("3 cm", "f") == doctest::Approx(0.03).epsilon(1e-15));
  CHECK(parse_length("5 m", "f") == 5.0);

  CHECK(parse_duration("90 ps", "f") == doctest::Approx(9e-11).epsilon(1e-15));
  CHECK(parse_duration("3 fs", "f") == doctest::Approx(3e-15).epsilon(1e-15));
  CHECK(parse_duration("7 ns", "f") == doctest::Approx(7e-9).epsilon(1e-15));
  CHECK(parse_duration("5 us", "f") == doctest::Approx(5e-6).epsilon(1e-15));
  CHECK(parse_duration("2 ms", "f") == doctest::Approx(0.002).epsilon(1e-15));
  CHECK(parse_duration("50 s", "f") == 50.0);
  CHECK(parse_duration("2 min", "f") == 120.0);
  CHECK(parse_duration("1 h", "f") == 3600.0);
  CHECK(parse_duration("1 day", "f") == 86400.0);

  CHECK(parse_speed("371 km/s", "f") == 371000.0);
  CHECK(parse_speed("5 m/s", "f") == 5.0);
  CHECK(parse_speed("0.001 c", "f") ==
        doctest::Approx(0.001 * kSpeedOfLight).epsilon(1e-15));

  CHECK(parse_rate("20 /s", "f") == 20.0);
  CHECK(parse_rate("20 1/s", "f") == 20.0);

  CHECK_THROWS_AS(parse_length("10.6", "f"), ConfigError);
  CHECK_THROWS_AS(parse_length("10.6 kg", "f"), ConfigError);
  CHECK_THROWS_AS(parse_speed("xx km/s", "f"), ConfigError);
  try {
    parse_duration("1 lightyear", "[alignment].delta_tau");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("[alignment].delta_tau") !=
          std::string::npos);
  }
}

TEST_CASE("config errors name the offending field") {
  const std::string base = fixture_text();

  expect_error(replaced(base, "a_latitude = 46d15m N", "a_latitude = 91 deg"),
               "[stations].a_latitude");
  expect_error(replaced(base, "distance = 10.6 km", "other = 1 m"),
               "[stations].distance");
  expect_error(replaced(base, "c_tau_final = 14 mm",
                        "c_tau_final = 14 mm\nc_tau_middle = 1 mm"),
               "[alignment].c_tau_middle");
  expect_error(replaced(base, "c_tau_final = 14 mm",
                        "c_tau_final = 14 mm\ntau_final = 1 ps"),
               "[alignment].tau_final");
  expect_error(replaced(base, "period = 1 h", "period = 1 h\nperiod = 2 h"),
               "[fringe].period");
  expect_error(base + "\n[spam]\nx = 1\n", "[spam]");
  expect_error(replaced(base, "distance = 10.6 km", "distance = 10.6 kg"),
               "[stations].distance");
  expect_error(replaced(base, "end_utc = 1999-06-02T06:30:00Z",
                        "end_utc = 1999-06-01T15:00:00Z"),
               "[window].end_utc");
  expect_error(replaced(base, "preset = cmb", "preset = cmb\nspeed = 100 km/s"),
               "[frame].preset");
  expect_error(replaced(base, "v_hyp = unbounded", "v_hyp = 0.5 c"),
               "[simulate].v_hyp");
  expect_error(replaced(base, "grid = 12x24", "grid = twelve"),
               "[scan].grid");

  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("serialization round-trips the fixture") {
  auto cfg = qis::test::geneva();
  const std::string canonical = serialize_config(cfg);
  auto back = parse_config(canonical, cfg.record.title);
  CHECK(back == cfg);
  CHECK(serialize_config(back) == canonical);
}

TEST_CASE("serialization round-trips an explicit-frame config") {
  const std::string text = R"(
[stations]
a_name = North
a_latitude = 10d30m N
a_longitude = 20d15m E
b_name = South
b_latitude = 9d45m N
b_longitude = 20d00m E
distance = 95 km

[window]
start_utc = 2004-02-10T03:00:00Z
end_utc = 2004-02-10T21:00:00Z

[alignment]
tau_initial = -40 ps
tau_final = 60 ps
delta_tau = 5 ps

[fringe]
period = 30 min

[frame]
speed = 500 km/s
right_ascension = 11.2 h
declination = -7.22 deg

[constants]
tropical_year = 365.2422 day
sidereal_day = 86164.1 s
ecliptic_inclination = 23.5 deg
earth_radius = 6371 km
earth_sun_distance = 149600000 km

[simulate]
base_rate = 55 /s
visibility = 0.8
v_collapse = 0.05
bin_width = 20 s
phase = 0.25 rad
v_hyp = 2 c

[plan]
d_ab = 635 km
achievable_alignment = 0.1 mm
delta_tau = 10 ps
fringe_period = 100 s
frame_speed = 371 km/s

[scan]
speeds = 100 km/s, 371 km/s
grid = explicit
ra_list = 0.5 rad, 3.1 rad
dec_list = -0.5 rad, 0.5 rad
)";

  auto cfg = parse_config(text, "synthetic");
  CHECK(cfg.record.frame.kind == FrameSpec::Kind::explicit_);
  CHECK(cfg.record.frame.speed == 500000.0);
  CHECK(cfg.has_plan);
  CHECK(cfg.has_simulate);
  CHECK_FALSE(cfg.simulate.hyp_unbounded);
  CHECK(cfg.simulate.hyp_speed == doctest::Approx(2.0 * kSpeedOfLight));
  CHECK_FALSE(cfg.simulate.seed.has_value());
  CHECK(cfg.scan.explicit_directions);
  REQUIRE(cfg.scan.ra_list.size() == 2);
  REQUIRE(cfg.scan.dec_list.size() == 2);

  const std::string canonical = serialize_config(cfg);
  auto back = parse_config(canonical, "synthetic");
  CHECK(back == cfg);
  CHECK(serialize_config(back) == canonical);
}

TEST_CASE("missing frame section defaults to the background preset") {
  auto text = fixture_text();
  auto pos = text.find("[frame]");
  REQUIRE(pos != std::string::npos);
  auto end = text.find("[simulate]");
  REQUIRE(end != std::string::npos);
  text.erase(pos, end - pos);
  auto cfg = parse_config(text, "t");
  CHECK(cfg.record.frame.kind == FrameSpec::Kind::cmb);
}
