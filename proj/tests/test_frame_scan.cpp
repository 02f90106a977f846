#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "qis/errors.hpp"
#include "qis/frame_scan.hpp"
#include "support.hpp"

using namespace qis;
using qis::test::rel_ok;

TEST_CASE("sky lattice") {
  auto grid = lattice_grid(12, 24, {kCmbSpeed});
  REQUIRE(grid.directions.size() == 288);
  REQUIRE(grid.speeds.size() == 1);
  for (const auto& d : grid.directions) {
    CHECK(std::abs(d.declination) < kPi / 2.0);
    CHECK(d.right_ascension >= 0.0);
    CHECK(d.right_ascension < 2.0 * kPi);
  }
  // First cell: lowest declination band, first right-ascension offset.
  CHECK(grid.directions[0].declination ==
        doctest::Approx(std::asin(-1.0 + 1.0 / 12.0)).epsilon(1e-14));
  CHECK(grid.directions[0].right_ascension ==
        doctest::Approx(0.5 * 2.0 * kPi / 24.0).epsilon(1e-14));
  // Rows advance in right ascension first.
  CHECK(grid.directions[1].declination == grid.directions[0].declination);
  CHECK(grid.directions[24].declination > grid.directions[0].declination);

  CHECK_THROWS_AS(lattice_grid(0, 24, {1.0}), ConfigError);
  CHECK_THROWS_AS(lattice_grid(12, 24, {}), ConfigError);
  CHECK_THROWS_AS(lattice_grid(12, 24, {kSpeedOfLight}), ConfigError);
  CHECK_THROWS_AS(lattice_grid(12, 24, {-1.0}), ConfigError);
}

TEST_CASE("grid from the scan spec") {
  ScanSpec spec;  // defaults: one speed, 12 x 24 lattice
  auto grid = grid_from_spec(spec);
  CHECK(grid.directions.size() == 288);
  CHECK(grid.speeds == std::vector<double>{kCmbSpeed});

  ScanSpec ex;
  ex.explicit_directions = true;
  ex.speeds = {1e5, 2e5};
  ex.ra_list = {0.1, 0.2, 0.3};
  ex.dec_list = {-0.5, 0.5};
  auto g2 = grid_from_spec(ex);
  REQUIRE(g2.directions.size() == 6);
  CHECK(g2.directions[0].right_ascension == doctest::Approx(0.1));
  CHECK(g2.directions[0].declination == doctest::Approx(-0.5));
  CHECK(g2.directions[1].right_ascension == doctest::Approx(0.2));
  CHECK(g2.directions[3].declination == doctest::Approx(0.5));

  ScanSpec missing = ex;
  missing.ra_list.clear();
  CHECK_THROWS_AS(grid_from_spec(missing), ConfigError);
}

TEST_CASE("a single background-frame cell reproduces the preset analysis") {
  auto cfg = qis::test::geneva();
  auto series = evaluate_series(cfg.record, 30.0);

  FrameGrid grid{{kCmbSpeed}, {cmb_apex()}};
  auto rows = scan_frames(cfg.record, grid, 30.0, 1);
  REQUIRE(rows.size() == 1);
  const auto& row = rows[0];
  CHECK(row.ok);
  CHECK(row.cell == 0);
  CHECK(row.bound == series.bound);
  CHECK(row.ceiling == series.ceiling);
  CHECK(row.n_crossings == static_cast<int>(series.crossings.size()));
  CHECK(row.good_alignment);
}

TEST_CASE("rows come back in cell order and survive speed permutation") {
  auto cfg = qis::test::geneva();
  auto grid_a = lattice_grid(2, 2, {kCmbSpeed, 1e5});
  auto grid_b = lattice_grid(2, 2, {1e5, kCmbSpeed});
  auto rows_a = scan_frames(cfg.record, grid_a, 600.0, 1);
  auto rows_b = scan_frames(cfg.record, grid_b, 600.0, 1);
  REQUIRE(rows_a.size() == 8);
  REQUIRE(rows_b.size() == 8);

  std::map<std::pair<double, std::pair<double, double>>, double> by_key;
  for (int i = 0; i < 8; ++i) {
    CHECK(rows_a[i].cell == i);
    CHECK(rows_a[i].ok);
    by_key[{rows_a[i].speed,
            {rows_a[i].direction.right_ascension,
             rows_a[i].direction.declination}}] = rows_a[i].bound;
  }
  for (const auto& row : rows_b) {
    auto it = by_key.find({row.speed,
                           {row.direction.right_ascension,
                            row.direction.declination}});
    REQUIRE(it != by_key.end());
    CHECK(row.bound == it->second);
  }
}

TEST_CASE("a zero-speed candidate still composes with orbit and spin") {
  auto cfg = qis::test::geneva();
  FrameGrid grid{{0.0}, {cmb_apex()}};
  auto rows = scan_frames(cfg.record, grid, 600.0, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok);
  // Orbital motion alone still dwarfs the fixture's tiny alignment sweep.
  CHECK(rows[0].good_alignment);
}

TEST_CASE("an over-aligned record never crosses and is flagged bad") {
  auto cfg = qis::test::geneva();
  auto rec = cfg.record;
  rec.alignment.tau_initial = 100.0 / kSpeedOfLight;  // r ~ 9.4e-3
  rec.alignment.tau_final = rec.alignment.tau_initial;

  FrameGrid grid{{kCmbSpeed}, {cmb_apex()}};
  auto rows = scan_frames(rec, grid, 600.0, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok);
  CHECK_FALSE(rows[0].good_alignment);
  CHECK(rows[0].n_crossings == 0);
  CHECK(rel_ok(rows[0].attainable_if_bad / kSpeedOfLight, 10600.0 / 100.0, 1e-9));
}

TEST_CASE("one failing cell does not sink the scan") {
  auto cfg = qis::test::geneva();
  FrameGrid grid{{kCmbSpeed, 0.02 * kSpeedOfLight}, {cmb_apex()}};
  auto rows = scan_frames(cfg.record, grid, 600.0, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[1].error.find("Galilean") != std::string::npos);
}

TEST_CASE("thread count does not change the answer") {
  auto cfg = qis::test::geneva();
  auto grid = lattice_grid(2, 3, {kCmbSpeed});
  auto one = scan_frames(cfg.record, grid, 600.0, 1);
  auto two = scan_frames(cfg.record, grid, 600.0, 2);
  REQUIRE(one.size() == two.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].cell == two[i].cell);
    CHECK(one[i].bound == two[i].bound);
    CHECK(one[i].n_crossings == two[i].n_crossings);
    CHECK(one[i].good_alignment == two[i].good_alignment);
  }
}
