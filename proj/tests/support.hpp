#pragma once

#include <cmath>
#include <string>

#include "qis/config.hpp"

namespace qis::test {

// Mixed absolute/relative tolerance, absolute below 1.
inline bool rel_ok(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::string fixture_path(const std::string& name) {
  return std::string(QIS_SOURCE_DIR) + "/fixtures/" + name;
}

inline ParsedConfig geneva() { return load_config(fixture_path("geneva_1999.cfg")); }

}  // namespace qis::test
