#include "qis/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "qis/baseline.hpp"
#include "qis/errors.hpp"

namespace qis {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view field, std::string_view msg) {
  throw ConfigError(std::string(field) + ": " + std::string(msg));
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      const std::string_view item = trim(s.substr(start, i - start));
      if (!item.empty()) out.push_back(item);
      start = i + 1;
    }
  }
  return out;
}

bool parse_double_token(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

double require_number(std::string_view tok, std::string_view field) {
  double x;
  if (!parse_double_token(tok, x)) fail(field, "cannot parse number '" + std::string(tok) + "'");
  return x;
}

double unit_scalar(std::string_view text, std::string_view field,
                   const std::map<std::string_view, double>& units,
                   std::string_view what) {
  const auto toks = split_ws(text);
  if (toks.size() != 2)
    fail(field, std::string("expected '<number> <unit>' with a ") +
                    std::string(what) + " unit");
  const auto it = units.find(toks[1]);
  if (it == units.end())
    fail(field, "unknown " + std::string(what) + " unit '" +
                    std::string(toks[1]) + "'");
  return require_number(toks[0], field) * it->second;
}

const std::map<std::string_view, double> kLengthUnits = {
    {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}, {"km", 1e3}};
const std::map<std::string_view, double> kDurationUnits = {
    {"fs", 1e-15}, {"ps", 1e-12}, {"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3},
    {"s", 1.0},    {"min", 60.0}, {"h", 3600.0}, {"day", 86400.0}};
const std::map<std::string_view, double> kSpeedUnits = {
    {"m/s", 1.0}, {"km/s", 1e3}, {"c", kSpeedOfLight}};
const std::map<std::string_view, double> kRateUnits = {{"/s", 1.0},
                                                       {"1/s", 1.0}};
const std::map<std::string_view, double> kAngularRateUnits = {{"rad/s", 1.0}};

// "46d15m", "46d15m30.5s'; sign allowed, minutes/seconds in [0, 60).
double parse_dms_deg(std::string_view t, std::string_view field) {
  const char* p = t.data();
  const char* last = t.data() + t.size();
  double sign = 1.0;
  if (p < last && (*p == '+' || *p == '-')) {
    if (*p == '-') sign = -1.0;
    ++p;
  }
  const auto number_until = [&](char tag, bool& present) {
    present = false;
    double x = 0.0;
    const auto res = std::from_chars(p, last, x);
    if (res.ec != std::errc() || res.ptr == p) return x;
    if (res.ptr < last && *res.ptr == tag) {
      present = true;
      p = res.ptr + 1;
    }
    return x;
  };
  bool has_d = false, has_m = false, has_s = false;
  const double deg = number_until('d', has_d);
  if (!has_d) fail(field, "expected degrees-arcminutes form like '46d15m'");
  double minutes = 0.0, seconds = 0.0;
  if (p < last) {
    minutes = number_until('m', has_m);
    if (!has_m) fail(field, "expected arcminutes after degrees, like '46d15m'");
    if (p < last) {
      seconds = number_until('s', has_s);
      if (!has_s || p != last)
        fail(field, "trailing characters after arcminutes; expected '30s'");
    }
  }
  if (deg < 0.0 || minutes < 0.0 || minutes >= 60.0 || seconds < 0.0 ||
      seconds >= 60.0)
    fail(field, "arcminutes and arcseconds must lie in [0, 60)");
  return sign * (deg + minutes / 60.0 + seconds / 3600.0);
}

std::uint64_t parse_uint(std::string_view text, std::string_view field) {
  const std::string_view tok = trim(text);
  std::uint64_t x = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    fail(field, "expected a non-negative integer");
  return x;
}

// Section -> key -> value with duplicate detection and used-tracking, so the
// assembler can report unknown keys by full path afterwards.
struct RawEntry {
  std::string value;
  bool used = false;
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::string current;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(
          pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      ++lineno;
      const std::size_t hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']' || line.size() < 3)
          throw ConfigError("line " + std::to_string(lineno) +
                            ": malformed section header");
        current = std::string(trim(line.substr(1, line.size() - 2)));
        if (sections_.count(current))
          fail("[" + current + "]", "duplicate section");
        sections_[current];
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected 'key = value'");
      if (current.empty())
        throw ConfigError("line " + std::to_string(lineno) +
                          ": key before any [section]");
      const std::string key{trim(line.substr(0, eq))};
      const std::string value{trim(line.substr(eq + 1))};
      if (key.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      auto [it, fresh] = sections_[current].emplace(key, RawEntry{value});
      if (!fresh) fail("[" + current + "]." + key, "duplicate key");
    }
  }

  bool has_section(const std::string& sec) const {
    return sections_.count(sec) != 0;
  }

  std::optional<std::string> get(const std::string& sec,
                                 const std::string& key) {
    const auto s = sections_.find(sec);
    if (s == sections_.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    k->second.used = true;
    return k->second.value;
  }

  std::string require(const std::string& sec, const std::string& key) {
    auto v = get(sec, key);
    if (!v) fail("[" + sec + "]." + key, "missing required key");
    return *v;
  }

  void check_known_sections(const std::set<std::string>& known) const {
    for (const auto& [name, entries] : sections_)
      if (!known.count(name)) fail("[" + name + "]", "unknown section");
  }

  void check_all_used() const {
    for (const auto& [name, entries] : sections_)
      for (const auto& [key, entry] : entries)
        if (!entry.used) fail("[" + name + "]." + key, "unknown key");
  }

 private:
  std::map<std::string, std::map<std::string, RawEntry>> sections_;
};

std::string field_path(const std::string& sec, const std::string& key) {
  return "[" + sec + "]." + key;
}

UtcInstant parse_utc_field(const std::string& text, std::string_view field) {
  try {
    return parse_utc(text);
  } catch (const ConfigError& e) {
    fail(field, e.what());
  }
}

double latitude_field(Reader& r, const std::string& key) {
  const double lat = parse_angle(r.require("stations", key),
                                 field_path("stations", key));
  if (!(std::abs(lat) <= kPi / 2.0))
    fail(field_path("stations", key), "latitude out of [-90, 90] degrees");
  return lat;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Whole seconds use the plain form; otherwise append a trimmed 9-digit
// fraction (identity is guaranteed for whole-second instants).
std::string format_utc_cfg(UtcInstant t) {
  const double whole = std::floor(t.unix_s);
  const double frac = t.unix_s - whole;
  if (frac < 1e-9 || frac > 1.0 - 1e-9) return format_utc(t);
  std::string base = format_utc(UtcInstant{whole});
  base.pop_back();
  char fbuf[16];
  std::snprintf(fbuf, sizeof fbuf, "%.9f", frac);
  std::string f{fbuf + 1};
  while (f.back() == '0') f.pop_back();
  return base + f + "Z";
}

}  // namespace

double parse_length(std::string_view text, std::string_view field) {
  return unit_scalar(text, field, kLengthUnits, "length");
}

double parse_duration(std::string_view text, std::string_view field) {
  return unit_scalar(text, field, kDurationUnits, "duration");
}

double parse_speed(std::string_view text, std::string_view field) {
  return unit_scalar(text, field, kSpeedUnits, "speed");
}

double parse_rate(std::string_view text, std::string_view field) {
  return unit_scalar(text, field, kRateUnits, "rate");
}

double parse_angle(std::string_view text, std::string_view field) {
  auto toks = split_ws(text);
  double sign = 1.0;
  bool hemisphere = false;
  if (toks.size() >= 2 && toks.back().size() == 1) {
    const char h = toks.back().front();
    if (h == 'N' || h == 'E' || h == 'S' || h == 'W') {
      hemisphere = true;
      if (h == 'S' || h == 'W') sign = -1.0;
      toks.pop_back();
    }
  }
  double value;
  if (toks.size() == 1 &&
      toks[0].find('d') != std::string_view::npos) {
    value = parse_dms_deg(toks[0], field) * kPi / 180.0;
  } else if (toks.size() == 2) {
    const double x = require_number(toks[0], field);
    if (toks[1] == "deg")
      value = x * kPi / 180.0;
    else if (toks[1] == "rad")
      value = x;
    else if (toks[1] == "h")
      value = x * 15.0 * kPi / 180.0;
    else
      fail(field, "unknown angle unit '" + std::string(toks[1]) +
                      "' (use deg, rad, h, or d/m/s form)");
  } else {
    fail(field, "expected an angle like '46d15m N', '-7.22 deg', '1.2 rad'");
  }
  if (hemisphere && value < 0.0)
    fail(field, "explicit sign and hemisphere letter are mutually exclusive");
  return sign * value;
}

ParsedConfig parse_config(std::string_view text, std::string_view title) {
  Reader r(text);
  r.check_known_sections({"stations", "window", "alignment", "fringe", "frame",
                          "constants", "simulate", "plan", "scan"});

  ParsedConfig cfg;
  ExperimentRecord& rec = cfg.record;
  rec.title = std::string(title);
  rec.constants = OrbitalConstants::defaults();

  rec.baseline.a.name = r.require("stations", "a_name");
  rec.baseline.a.latitude = latitude_field(r, "a_latitude");
  rec.baseline.a.longitude =
      parse_angle(r.require("stations", "a_longitude"),
                  field_path("stations", "a_longitude"));
  rec.baseline.b.name = r.require("stations", "b_name");
  rec.baseline.b.latitude = latitude_field(r, "b_latitude");
  rec.baseline.b.longitude =
      parse_angle(r.require("stations", "b_longitude"),
                  field_path("stations", "b_longitude"));
  rec.baseline.d_ab = parse_length(r.require("stations", "distance"),
                                   field_path("stations", "distance"));
  if (!(rec.baseline.d_ab > 0.0))
    fail(field_path("stations", "distance"), "must be > 0");

  rec.start_utc = parse_utc_field(r.require("window", "start_utc"),
                                  field_path("window", "start_utc"));
  rec.end_utc = parse_utc_field(r.require("window", "end_utc"),
                                field_path("window", "end_utc"));
  if (!(rec.end_utc.unix_s > rec.start_utc.unix_s))
    fail(field_path("window", "end_utc"), "must be after start_utc");

  // tau is the signed detection-time offset t_A - t_B, station A first.
  // Either the offset itself or its light-path length c*tau may be given.
  const auto tau_field = [&](const std::string& base) {
    const auto as_time = r.get("alignment", "tau_" + base);
    const auto as_length = r.get("alignment", "c_tau_" + base);
    if (as_time && as_length)
      fail(field_path("alignment", "tau_" + base),
           "give either tau_* or c_tau_*, not both");
    if (as_time)
      return parse_duration(*as_time, field_path("alignment", "tau_" + base));
    if (as_length)
      return parse_length(*as_length,
                          field_path("alignment", "c_tau_" + base)) /
             kSpeedOfLight;
    fail(field_path("alignment", "c_tau_" + base), "missing required key");
  };
  rec.alignment.tau_initial = tau_field("initial");
  rec.alignment.tau_final = tau_field("final");
  rec.alignment.delta_tau = parse_duration(
      r.require("alignment", "delta_tau"), field_path("alignment", "delta_tau"));
  if (!(rec.alignment.delta_tau > 0.0))
    fail(field_path("alignment", "delta_tau"), "must be > 0");

  rec.fringe_period = parse_duration(r.require("fringe", "period"),
                                     field_path("fringe", "period"));
  if (!(rec.fringe_period > 0.0))
    fail(field_path("fringe", "period"), "must be > 0");

  rec.frame = FrameSpec{};  // defaults to the microwave-background preset
  if (r.has_section("frame")) {
    const auto preset = r.get("frame", "preset");
    const auto speed = r.get("frame", "speed");
    const auto ra = r.get("frame", "right_ascension");
    const auto dec = r.get("frame", "declination");
    if (preset && (speed || ra || dec))
      fail(field_path("frame", "preset"),
           "preset and explicit frame keys are mutually exclusive");
    if (preset) {
      if (*preset == "cmb")
        rec.frame.kind = FrameSpec::Kind::cmb;
      else if (*preset == "lab")
        rec.frame.kind = FrameSpec::Kind::lab;
      else
        fail(field_path("frame", "preset"),
             "unknown preset '" + *preset + "' (use cmb or lab)");
    } else {
      if (!speed || !ra || !dec)
        fail(field_path("frame", "speed"),
             "explicit frame needs speed, right_ascension and declination");
      rec.frame.kind = FrameSpec::Kind::explicit_;
      rec.frame.speed = parse_speed(*speed, field_path("frame", "speed"));
      if (!(rec.frame.speed >= 0.0 && rec.frame.speed < kGalileanGuard))
        fail(field_path("frame", "speed"), "must lie in [0, 0.01 c)");
      const double ra_v =
          parse_angle(*ra, field_path("frame", "right_ascension"));
      const double dec_v =
          parse_angle(*dec, field_path("frame", "declination"));
      if (!(std::abs(dec_v) <= kPi / 2.0))
        fail(field_path("frame", "declination"),
             "declination out of [-90, 90] degrees");
      rec.frame.direction = make_direction(ra_v, dec_v);
    }
  }

  if (r.has_section("constants")) {
    const auto exclusive_rate = [&](const std::string& period_key,
                                    const std::string& rate_key) {
      const auto period = r.get("constants", period_key);
      const auto rate = r.get("constants", rate_key);
      if (period && rate)
        fail(field_path("constants", rate_key),
             "give either " + period_key + " or " + rate_key + ", not both");
      std::optional<double> out;
      if (period) {
        const double p =
            parse_duration(*period, field_path("constants", period_key));
        if (!(p > 0.0)) fail(field_path("constants", period_key), "must be > 0");
        out = 2.0 * kPi / p;
      } else if (rate) {
        const double w = unit_scalar(*rate, field_path("constants", rate_key),
                                     kAngularRateUnits, "angular rate");
        if (!(w > 0.0)) fail(field_path("constants", rate_key), "must be > 0");
        out = w;
      }
      return out;
    };
    if (const auto w = exclusive_rate("tropical_year", "omega_y"))
      rec.constants.omega_y = *w;
    if (const auto w = exclusive_rate("sidereal_day", "omega_d"))
      rec.constants.omega_d = *w;
    if (const auto v = r.get("constants", "ecliptic_inclination")) {
      rec.constants.theta_e =
          parse_angle(*v, field_path("constants", "ecliptic_inclination"));
      if (!(rec.constants.theta_e >= 0.0 && rec.constants.theta_e < kPi / 2.0))
        fail(field_path("constants", "ecliptic_inclination"),
             "must lie in [0, 90) degrees");
    }
    if (const auto v = r.get("constants", "earth_radius")) {
      rec.constants.r_earth =
          parse_length(*v, field_path("constants", "earth_radius"));
      if (!(rec.constants.r_earth > 0.0))
        fail(field_path("constants", "earth_radius"), "must be > 0");
    }
    if (const auto v = r.get("constants", "earth_sun_distance")) {
      rec.constants.d_earth_sun =
          parse_length(*v, field_path("constants", "earth_sun_distance"));
      if (!(rec.constants.d_earth_sun > 0.0))
        fail(field_path("constants", "earth_sun_distance"), "must be > 0");
    }
  }

  cfg.has_simulate = r.has_section("simulate");
  if (cfg.has_simulate) {
    SimulateSpec& s = cfg.simulate;
    if (const auto v = r.get("simulate", "base_rate")) {
      s.base_rate = parse_rate(*v, field_path("simulate", "base_rate"));
      if (!(s.base_rate >= 0.0))
        fail(field_path("simulate", "base_rate"), "must be >= 0");
    }
    if (const auto v = r.get("simulate", "visibility")) {
      s.visibility = require_number(trim(*v), field_path("simulate", "visibility"));
      if (!(s.visibility >= 0.0 && s.visibility <= 1.0))
        fail(field_path("simulate", "visibility"), "must lie in [0, 1]");
    }
    if (const auto v = r.get("simulate", "v_collapse")) {
      s.v_collapse = require_number(trim(*v), field_path("simulate", "v_collapse"));
      if (!(s.v_collapse >= 0.0 && s.v_collapse <= s.visibility))
        fail(field_path("simulate", "v_collapse"),
             "must lie in [0, visibility]");
    }
    if (const auto v = r.get("simulate", "bin_width")) {
      s.bin_width = parse_duration(*v, field_path("simulate", "bin_width"));
      if (!(s.bin_width > 0.0))
        fail(field_path("simulate", "bin_width"), "must be > 0");
    }
    if (const auto v = r.get("simulate", "phase"))
      s.phase = parse_angle(*v, field_path("simulate", "phase"));
    if (const auto v = r.get("simulate", "v_hyp")) {
      if (trim(*v) == "unbounded") {
        s.hyp_unbounded = true;
        s.hyp_speed = 0.0;
      } else {
        s.hyp_unbounded = false;
        s.hyp_speed = parse_speed(*v, field_path("simulate", "v_hyp"));
        if (!(s.hyp_speed > kSpeedOfLight))
          fail(field_path("simulate", "v_hyp"),
               "finite influence-speed hypothesis must exceed c");
      }
    }
    if (const auto v = r.get("simulate", "seed"))
      s.seed = parse_uint(*v, field_path("simulate", "seed"));
  }

  cfg.has_plan = r.has_section("plan");
  if (cfg.has_plan) {
    PlanSpec& p = cfg.plan;
    if (const auto v = r.get("plan", "d_ab")) {
      p.d_ab = parse_length(*v, field_path("plan", "d_ab"));
      if (!(*p.d_ab > 0.0)) fail(field_path("plan", "d_ab"), "must be > 0");
    }
    if (const auto v = r.get("plan", "achievable_alignment")) {
      p.achievable_alignment =
          parse_length(*v, field_path("plan", "achievable_alignment"));
      if (!(*p.achievable_alignment >= 0.0))
        fail(field_path("plan", "achievable_alignment"), "must be >= 0");
    }
    if (const auto v = r.get("plan", "delta_tau")) {
      p.delta_tau = parse_duration(*v, field_path("plan", "delta_tau"));
      if (!(*p.delta_tau > 0.0))
        fail(field_path("plan", "delta_tau"), "must be > 0");
    }
    if (const auto v = r.get("plan", "fringe_period")) {
      p.fringe_period = parse_duration(*v, field_path("plan", "fringe_period"));
      if (!(*p.fringe_period > 0.0))
        fail(field_path("plan", "fringe_period"), "must be > 0");
    }
    if (const auto v = r.get("plan", "frame_speed")) {
      p.frame_speed = parse_speed(*v, field_path("plan", "frame_speed"));
      if (!(*p.frame_speed >= 0.0 && *p.frame_speed < kGalileanGuard))
        fail(field_path("plan", "frame_speed"), "must lie in [0, 0.01 c)");
    }
  }

  cfg.has_scan = r.has_section("scan");
  if (cfg.has_scan) {
    ScanSpec& sc = cfg.scan;
    if (const auto v = r.get("scan", "speeds")) {
      sc.speeds.clear();
      for (const auto item : split_list(*v))
        sc.speeds.push_back(parse_speed(item, field_path("scan", "speeds")));
      if (sc.speeds.empty())
        fail(field_path("scan", "speeds"), "needs at least one entry");
      for (const double sp : sc.speeds)
        if (!(sp >= 0.0 && sp < kSpeedOfLight))
          fail(field_path("scan", "speeds"), "each speed must lie in [0, c)");
    }
    if (const auto v = r.get("scan", "grid")) {
      const std::string_view g = trim(*v);
      if (g == "explicit") {
        sc.explicit_directions = true;
      } else {
        const std::size_t x = g.find('x');
        if (x == std::string_view::npos)
          fail(field_path("scan", "grid"), "expected 'NxM' or 'explicit'");
        sc.n_dec = static_cast<int>(
            parse_uint(g.substr(0, x), field_path("scan", "grid")));
        sc.n_ra = static_cast<int>(
            parse_uint(g.substr(x + 1), field_path("scan", "grid")));
        if (sc.n_dec < 1 || sc.n_ra < 1)
          fail(field_path("scan", "grid"), "lattice must be at least 1x1");
      }
    }
    const auto angle_list = [&](const std::string& key,
                                std::vector<double>& out) {
      const auto v = r.get("scan", key);
      if (!v) return false;
      out.clear();
      for (const auto item : split_list(*v))
        out.push_back(parse_angle(item, field_path("scan", key)));
      if (out.empty()) fail(field_path("scan", key), "needs at least one entry");
      return true;
    };
    const bool has_ra = angle_list("ra_list", sc.ra_list);
    const bool has_dec = angle_list("dec_list", sc.dec_list);
    if (sc.explicit_directions) {
      if (!has_ra || !has_dec)
        fail(field_path("scan", "grid"),
             "explicit grid needs ra_list and dec_list");
      for (const double d : sc.dec_list)
        if (!(std::abs(d) <= kPi / 2.0))
          fail(field_path("scan", "dec_list"),
               "declination out of [-90, 90] degrees");
    } else if (has_ra || has_dec) {
      fail(field_path("scan", "grid"),
           "ra_list/dec_list require grid = explicit");
    }
  }

  r.check_all_used();

  rec.baseline.phi0 = vernal_hour_angle(rec.baseline.a, rec.start_utc);
  return cfg;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string title = path;
  const std::size_t slash = title.find_last_of('/');
  if (slash != std::string::npos) title = title.substr(slash + 1);
  const std::size_t dot = title.find_last_of('.');
  if (dot != std::string::npos && dot > 0) title = title.substr(0, dot);
  return parse_config(buf.str(), title);
}

std::string serialize_config(const ParsedConfig& cfg) {
  const ExperimentRecord& rec = cfg.record;
  std::ostringstream out;
  out << "[stations]\n";
  out << "a_name = " << rec.baseline.a.name << "\n";
  out << "a_latitude = " << g17(rec.baseline.a.latitude) << " rad\n";
  out << "a_longitude = " << g17(rec.baseline.a.longitude) << " rad\n";
  out << "b_name = " << rec.baseline.b.name << "\n";
  out << "b_latitude = " << g17(rec.baseline.b.latitude) << " rad\n";
  out << "b_longitude = " << g17(rec.baseline.b.longitude) << " rad\n";
  out << "distance = " << g17(rec.baseline.d_ab) << " m\n";

  out << "\n[window]\n";
  out << "start_utc = " << format_utc_cfg(rec.start_utc) << "\n";
  out << "end_utc = " << format_utc_cfg(rec.end_utc) << "\n";

  out << "\n[alignment]\n";
  out << "tau_initial = " << g17(rec.alignment.tau_initial) << " s\n";
  out << "tau_final = " << g17(rec.alignment.tau_final) << " s\n";
  out << "delta_tau = " << g17(rec.alignment.delta_tau) << " s\n";

  out << "\n[fringe]\n";
  out << "period = " << g17(rec.fringe_period) << " s\n";

  out << "\n[frame]\n";
  switch (rec.frame.kind) {
    case FrameSpec::Kind::cmb:
      out << "preset = cmb\n";
      break;
    case FrameSpec::Kind::lab:
      out << "preset = lab\n";
      break;
    case FrameSpec::Kind::explicit_:
      out << "speed = " << g17(rec.frame.speed) << " m/s\n";
      out << "right_ascension = " << g17(rec.frame.direction.right_ascension)
          << " rad\n";
      out << "declination = " << g17(rec.frame.direction.declination)
          << " rad\n";
      break;
  }

  out << "\n[constants]\n";
  out << "omega_y = " << g17(rec.constants.omega_y) << " rad/s\n";
  out << "ecliptic_inclination = " << g17(rec.constants.theta_e) << " rad\n";
  out << "earth_sun_distance = " << g17(rec.constants.d_earth_sun) << " m\n";
  out << "earth_radius = " << g17(rec.constants.r_earth) << " m\n";
  out << "omega_d = " << g17(rec.constants.omega_d) << " rad/s\n";

  if (cfg.has_simulate) {
    const SimulateSpec& s = cfg.simulate;
    out << "\n[simulate]\n";
    out << "base_rate = " << g17(s.base_rate) << " /s\n";
    out << "visibility = " << g17(s.visibility) << "\n";
    out << "v_collapse = " << g17(s.v_collapse) << "\n";
    out << "bin_width = " << g17(s.bin_width) << " s\n";
    out << "phase = " << g17(s.phase) << " rad\n";
    if (s.hyp_unbounded)
      out << "v_hyp = unbounded\n";
    else
      out << "v_hyp = " << g17(s.hyp_speed) << " m/s\n";
    if (s.seed) out << "seed = " << *s.seed << "\n";
  }

  if (cfg.has_plan) {
    const PlanSpec& p = cfg.plan;
    out << "\n[plan]\n";
    if (p.d_ab) out << "d_ab = " << g17(*p.d_ab) << " m\n";
    if (p.achievable_alignment)
      out << "achievable_alignment = " << g17(*p.achievable_alignment)
          << " m\n";
    if (p.delta_tau) out << "delta_tau = " << g17(*p.delta_tau) << " s\n";
    if (p.fringe_period)
      out << "fringe_period = " << g17(*p.fringe_period) << " s\n";
    if (p.frame_speed)
      out << "frame_speed = " << g17(*p.frame_speed) << " m/s\n";
  }

  if (cfg.has_scan) {
    const ScanSpec& sc = cfg.scan;
    out << "\n[scan]\n";
    out << "speeds = ";
    for (std::size_t i = 0; i < sc.speeds.size(); ++i)
      out << (i ? ", " : "") << g17(sc.speeds[i]) << " m/s";
    out << "\n";
    if (sc.explicit_directions) {
      out << "grid = explicit\n";
      out << "ra_list = ";
      for (std::size_t i = 0; i < sc.ra_list.size(); ++i)
        out << (i ? ", " : "") << g17(sc.ra_list[i]) << " rad";
      out << "\ndec_list = ";
      for (std::size_t i = 0; i < sc.dec_list.size(); ++i)
        out << (i ? ", " : "") << g17(sc.dec_list[i]) << " rad";
      out << "\n";
    } else {
      out << "grid = " << sc.n_dec << "x" << sc.n_ra << "\n";
    }
  }

  return out.str();
}

}  // namespace qis
