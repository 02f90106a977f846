#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qis {

// Civil UTC instant as seconds since 1970-01-01T00:00:00Z.  Leap seconds are
// ignored; every derived angle tolerance is orders of magnitude above them.
struct UtcInstant {
  double unix_s = 0.0;

  bool operator==(const UtcInstant&) const = default;
};

UtcInstant utc_from_civil(int year, int month, int day, int hour, int minute,
                          double second);

// Strict "YYYY-MM-DDTHH:MM:SS[.fff]Z"; throws ConfigError otherwise.
UtcInstant parse_utc(std::string_view iso);

// Whole-second ISO-8601 Z form; round-trips through parse_utc.
std::string format_utc(UtcInstant t);

double julian_date(UtcInstant t);

}  // namespace qis
