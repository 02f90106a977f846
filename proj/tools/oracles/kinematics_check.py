#!/usr/bin/env python3
"""Independent brute-force check of the kinematics chain.

Recomputes, with plain Python floats and no shared code, every number the
C++ tests pin as a golden value: equinox phase, sidereal angles, frame
velocity components, baseline projections, simultaneity crossings, and the
sliding-window speed bound for the Geneva 1999 fixture.  Test tolerances in
tests/ were frozen from this script's output; rerun it with

    python3 tools/oracles/kinematics_check.py

and compare against the [golden] lines.
"""

import json
import math
from datetime import datetime, timedelta, timezone

C = 299792458.0                  # m/s
TROPICAL_YEAR_S = 365.2422 * 86400.0
SIDEREAL_DAY_S = 86164.1
OMEGA_Y = 2.0 * math.pi / TROPICAL_YEAR_S
OMEGA_D = 2.0 * math.pi / SIDEREAL_DAY_S
D_EARTH_SUN = 1.496e11           # m
R_EARTH = 6.371e6                # m
ECLIPTIC_RAD = math.radians(23.5)

CMB_SPEED = 371e3                # m/s, solar-system velocity wrt the CMB
CMB_RA_RAD = math.radians(11.20 * 15.0)      # 11.20 h
CMB_DEC_RAD = math.radians(-7.22)

def utc(y, mo, d, h, mi, s=0.0):
    base = datetime(y, mo, d, h, mi, 0, tzinfo=timezone.utc)
    return base.timestamp() + s

# Mean-equinox model: anchored at the 2000 March equinox, stepped by one
# tropical year.  Stays within ~20 min of published instants over 1990-2030,
# far inside the 0.02 rad tolerance on the orbital phase, and makes the
# phase exactly periodic in one tropical year.
EQUINOX_ANCHOR = utc(2000, 3, 20, 7, 35)

def equinox_table():
    rows = []
    for year in range(1990, 2031):
        t = EQUINOX_ANCHOR + (year - 2000) * TROPICAL_YEAR_S
        rows.append((year, t))
    return rows

def most_recent_equinox(t):
    best = None
    for _, te in equinox_table():
        if te <= t and (best is None or te > best):
            best = te
    return best

def theta0_at(t):
    te = most_recent_equinox(t)
    return OMEGA_Y * (t - te), t - te

# Greenwich mean sidereal time, linear IAU 1982 term (quadratic terms are
# below 1e-6 rad over 1990-2030).
def gmst_rad(t_unix):
    jd = t_unix / 86400.0 + 2440587.5
    d = jd - 2451545.0
    deg = 280.46061837 + 360.98564736629 * d
    return math.radians(deg % 360.0)

def vernal_hour_angle(t_unix, lon_east_rad):
    return (gmst_rad(t_unix) + lon_east_rad) % (2.0 * math.pi)

def sun_cmb_velocity():
    theta_v = math.pi / 2.0 - CMB_DEC_RAD     # colatitude of the apex
    phi_v = CMB_RA_RAD
    return [CMB_SPEED * math.cos(phi_v) * math.sin(theta_v),
            CMB_SPEED * math.sin(phi_v) * math.sin(theta_v),
            CMB_SPEED * math.cos(theta_v)]

def earth_sun_velocity(theta0, corrected=False):
    v = OMEGA_Y * D_EARTH_SUN
    if corrected:
        # Sign-corrected variant (see notes): prograde orbit, velocity apex
        # 90 deg west of the Sun.
        return [v * math.sin(theta0),
                -v * math.cos(theta0) * math.cos(ECLIPTIC_RAD),
                -v * math.cos(theta0) * math.sin(ECLIPTIC_RAD)]
    return [-v * math.sin(theta0),
            v * math.cos(theta0) * math.cos(ECLIPTIC_RAD),
            -v * math.cos(theta0) * math.sin(ECLIPTIC_RAD)]

def site_spin_velocity(lat_rad, phi):
    v = OMEGA_D * R_EARTH * math.cos(lat_rad)
    return [-v * math.sin(phi), v * math.cos(phi), 0.0]

def add3(*vs):
    return [sum(v[i] for v in vs) for i in range(3)]

def neg3(v):
    return [-v[0], -v[1], -v[2]]

def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

def norm3(v):
    return math.sqrt(dot3(v, v))

# Geneva fixture
LAT_A = math.radians(46.0 + 15.0 / 60.0)   # Bellevue
LON_A = math.radians(6.0 + 9.0 / 60.0)
LAT_B = math.radians(46.0 + 10.0 / 60.0)   # Bernex
LON_B = math.radians(6.0 + 5.0 / 60.0)
D_AB = 10.6e3
START = utc(1999, 6, 1, 15, 30)
END = utc(1999, 6, 2, 6, 30)
DURATION = END - START
CTAU_I = 2e-3
CTAU_F = 14e-3
DELTA_TAU = 90e-12
FRINGE_S = 3600.0

COLAT_A = math.pi / 2.0 - LAT_A
COLAT_B = math.pi / 2.0 - LAT_B
DLON = LON_B - LON_A

def unit_baseline(phi_a):
    phi_b = phi_a + DLON
    ax = math.sin(COLAT_A) * math.cos(phi_a)
    ay = math.sin(COLAT_A) * math.sin(phi_a)
    az = math.cos(COLAT_A)
    bx = math.sin(COLAT_B) * math.cos(phi_b)
    by = math.sin(COLAT_B) * math.sin(phi_b)
    bz = math.cos(COLAT_B)
    d = [bx - ax, by - ay, bz - az]
    n = norm3(d)
    return [d[0] / n, d[1] / n, d[2] / n]

def r_of_t(trel):
    ctau = CTAU_I + (CTAU_F - CTAU_I) * (trel / DURATION)
    return ctau / D_AB

def lab_frame_velocity(trel, theta0, phi0, corrected):
    # velocity of the laboratory (site A) wrt the CMB frame
    phi_a = phi0 + OMEGA_D * trel
    return add3(site_spin_velocity(LAT_A, phi_a),
                earth_sun_velocity(theta0, corrected),
                sun_cmb_velocity())

def beta_x(trel, theta0, phi0, corrected):
    v_frame = neg3(lab_frame_velocity(trel, theta0, phi0, corrected))
    e = unit_baseline(phi0 + OMEGA_D * trel)
    return dot3(v_frame, e) / C

def g_of_t(trel, theta0, phi0, corrected):
    return r_of_t(trel) + beta_x(trel, theta0, phi0, corrected)

def v_over_c(trel, theta0, phi0, corrected):
    r = r_of_t(trel)
    b = beta_x(trel, theta0, phi0, corrected)
    return -(1.0 + r * b) / (r + b)

def find_crossings(theta0, phi0, corrected, step=10.0):
    xs = []
    t = 0.0
    g_prev = g_of_t(0.0, theta0, phi0, corrected)
    while t + step <= DURATION + 1e-9:
        t2 = t + step
        g2 = g_of_t(t2, theta0, phi0, corrected)
        if g_prev == 0.0:
            xs.append(t)
        elif g_prev * g2 < 0.0:
            lo, hi = t, t2
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                gm = g_of_t(mid, theta0, phi0, corrected)
                if g_prev * gm <= 0.0:
                    hi = mid
                else:
                    lo = mid
            xs.append(0.5 * (lo + hi))
        t, g_prev = t2, g2
    return xs

def sliding_bound(theta0, phi0, corrected, step=10.0, fringe=FRINGE_S):
    n = int(DURATION / step) + 1
    ceiling = D_AB / DELTA_TAU
    absv = []
    for i in range(n):
        t = i * step
        v = abs(v_over_c(t, theta0, phi0, corrected)) * C
        absv.append(min(v, ceiling))
    half = fringe / 2.0
    m = int(half / step)
    best = 0.0
    for i in range(0, n - m):
        w = min(absv[i:i + m + 1])
        best = max(best, w)
    return min(best, ceiling), ceiling

def fmt_utc(t):
    return datetime.fromtimestamp(t, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")

def main():
    g = {}

    print("== instants ==")
    print("start unix", repr(START), fmt_utc(START))
    print("end   unix", repr(END), fmt_utc(END))
    print("duration_s", DURATION)
    g["start_unix"] = START
    g["duration_s"] = DURATION

    theta0, dte = theta0_at(START)
    print("\n== orbital phase ==")
    eq99 = most_recent_equinox(START)
    print("equinox used:", fmt_utc(eq99), repr(eq99))
    print("delta_t_equinox_s", dte)
    print("[golden] theta0_rad", "%.12g" % theta0)
    g["theta0_rad"] = theta0

    print("\n== sidereal angle (site A) ==")
    phi0 = vernal_hour_angle(START, LON_A)
    print("gmst_rad", "%.12g" % gmst_rad(START))
    print("[golden] phi0_rad", "%.12g" % phi0)
    g["phi0_rad"] = phi0

    print("\n== frame velocity components at start, m/s ==")
    vs = sun_cmb_velocity()
    print("[golden] sun_cmb", ["%.12g" % x for x in vs])
    g["sun_cmb"] = vs
    for corrected in (False, True):
        tag = "corrected" if corrected else "printed"
        ve = earth_sun_velocity(theta0, corrected)
        spin = site_spin_velocity(LAT_A, phi0)
        tot = add3(spin, ve, vs)
        print(f"-- orbital sign variant: {tag}")
        print("   earth_sun", ["%.12g" % x for x in ve])
        print("   site_spin", ["%.12g" % x for x in spin])
        print("   lab_wrt_cmb total", ["%.12g" % x for x in tot],
              "| |v| km/s = %.6f" % (norm3(tot) / 1e3))
        if not corrected:
            g["earth_sun"] = ve
            g["site_spin"] = spin
            g["lab_wrt_cmb"] = tot
            g["lab_speed_m_s"] = norm3(tot)

    print("\n== baseline ==")
    e0 = unit_baseline(phi0)
    print("[golden] e_x(0)", ["%.12g" % x for x in e0])
    g["e_x0"] = e0
    print("e_x z-component (const):", "%.12g" % e0[2])
    b0 = beta_x(0.0, theta0, phi0, False)
    print("[golden] beta_x(0) printed-sign", "%.12g" % b0)
    g["beta_x0"] = b0
    print("r(0)", "%.12g" % r_of_t(0.0), " r(end)", "%.12g" % r_of_t(DURATION))
    g["r0"] = r_of_t(0.0)
    g["r_end"] = r_of_t(DURATION)

    print("\n== series endpoints (v_qi_min / c, signed, uncapped) ==")
    for corrected in (False, True):
        tag = "corrected" if corrected else "printed"
        v0 = v_over_c(0.0, theta0, phi0, corrected)
        v1 = v_over_c(DURATION, theta0, phi0, corrected)
        print(f"   {tag}: v/c(0) = %.12g   v/c(end) = %.12g" % (v0, v1))
        if not corrected:
            g["v_over_c_start"] = v0
            g["v_over_c_end"] = v1

    print("\n== simultaneity crossings ==")
    for corrected in (False, True):
        tag = "corrected" if corrected else "printed"
        xs = find_crossings(theta0, phi0, corrected)
        print(f"-- {tag}: {len(xs)} crossing(s)")
        for x in xs:
            print("   t_rel = %.3f s   utc = %s" % (x, fmt_utc(START + x)))
        if not corrected:
            g["crossings_rel_s"] = xs

    print("\n== bound (fringe 3600 s, step 10 s) ==")
    for corrected in (False, True):
        tag = "corrected" if corrected else "printed"
        bound, ceiling = sliding_bound(theta0, phi0, corrected)
        print(f"   {tag}: bound/c = %.6g   ceiling/c = %.6g"
              % (bound / C, ceiling / C))
        if not corrected:
            g["bound_over_c"] = bound / C
            g["ceiling_over_c"] = ceiling / C

    print("\n== planner cross-checks ==")
    vlab = g["lab_speed_m_s"]
    beta = vlab / C
    ceiling = D_AB / DELTA_TAU
    rot_1h = C / (beta * OMEGA_D * FRINGE_S / 4.0)
    t_star = 4.0 * C / (beta * OMEGA_D * ceiling)
    print("required_r (=beta)", "%.6g" % beta)
    print("rotation bound at 1 h fringe, /c:", "%.6g" % (rot_1h / C))
    print("[golden] fringe time where rotation limit = ceiling, s:",
          "%.6g" % t_star)
    g["plan_t_star_s"] = t_star

    print("\n== equinox table (mean model, unix seconds) ==")
    for year, t in equinox_table():
        print("   {%d, %.2f},  // %s" % (year, t, fmt_utc(t)))

    with open("/tmp/kinematics_golden.json", "w") as f:
        json.dump(g, f, indent=1)
    print("\ngolden json -> /tmp/kinematics_golden.json")

if __name__ == "__main__":
    main()
