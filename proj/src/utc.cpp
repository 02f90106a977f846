#include "qis/utc.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qis/errors.hpp"

namespace qis {
namespace {

// Proleptic Gregorian day count since 1970-01-01 (Hinnant's algorithm).
long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long yr = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

UtcInstant utc_from_civil(int year, int month, int day, int hour, int minute,
                          double second) {
  const double days = static_cast<double>(days_from_civil(year, month, day));
  return {days * 86400.0 + hour * 3600.0 + minute * 60.0 + second};
}

UtcInstant parse_utc(std::string_view iso) {
  const auto fail = [&] {
    throw ConfigError("bad UTC instant '" + std::string(iso) +
                      "', expected YYYY-MM-DDTHH:MM:SS[.fff]Z");
  };
  if (iso.size() < 20 || iso.back() != 'Z') fail();
  std::string_view body = iso.substr(0, iso.size() - 1);
  if (body[4] != '-' || body[7] != '-' || body[10] != 'T' || body[13] != ':' ||
      body[16] != ':')
    fail();
  std::string_view ys = body.substr(0, 4), mos = body.substr(5, 2),
                   ds = body.substr(8, 2), hs = body.substr(11, 2),
                   mis = body.substr(14, 2), ss = body.substr(17, 2);
  if (!all_digits(ys) || !all_digits(mos) || !all_digits(ds) ||
      !all_digits(hs) || !all_digits(mis) || !all_digits(ss))
    fail();
  double frac = 0.0;
  if (body.size() > 19) {
    std::string_view rest = body.substr(19);
    if (rest[0] != '.' || rest.size() < 2 || !all_digits(rest.substr(1)))
      fail();
    frac = std::strtod(std::string(rest).c_str(), nullptr);
  }
  const int y = to_int(ys), mo = to_int(mos), d = to_int(ds), h = to_int(hs),
            mi = to_int(mis), s = to_int(ss);
  if (mo < 1 || mo > 12 || d < 1 || h > 23 || mi > 59 || s > 59) fail();
  int yy, mm, dd;
  civil_from_days(days_from_civil(y, mo, d), yy, mm, dd);
  if (yy != y || mm != mo || dd != d) fail();  // e.g. Feb 30
  return utc_from_civil(y, mo, d, h, mi, s + frac);
}

std::string format_utc(UtcInstant t) {
  const long long total = std::llround(t.unix_s);
  long long days = total / 86400;
  long long sod = total % 86400;
  if (sod < 0) {
    sod += 86400;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02lld:%02lld:%02lldZ", y, m,
                d, sod / 3600, (sod / 60) % 60, sod % 60);
  return buf;
}

double julian_date(UtcInstant t) { return t.unix_s / 86400.0 + 2440587.5; }

}  // namespace qis
