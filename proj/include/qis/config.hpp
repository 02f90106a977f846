#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qis/record.hpp"

namespace qis {

// Flat sectioned key-value config text with explicit unit suffixes.  Every
// parse error names the offending [section].key.
struct ParsedConfig {
  ExperimentRecord record;
  SimulateSpec simulate;
  PlanSpec plan;
  ScanSpec scan;
  bool has_simulate = false;
  bool has_plan = false;
  bool has_scan = false;

  bool operator==(const ParsedConfig&) const = default;
};

ParsedConfig parse_config(std::string_view text, std::string_view title);

ParsedConfig load_config(const std::string& path);

// Canonical SI form; parse(serialize(x)) reproduces x field for field.
std::string serialize_config(const ParsedConfig& cfg);

// Unit-suffixed scalar parsers, exposed for tests.  `field` labels errors.
double parse_length(std::string_view text, std::string_view field);    // m
double parse_duration(std::string_view text, std::string_view field);  // s
double parse_speed(std::string_view text, std::string_view field);     // m/s
double parse_rate(std::string_view text, std::string_view field);      // 1/s
// Angles accept "46d15m N" / "46d15m30s S", "-7.22 deg", "1.2 rad",
// "11.20 h" (hour angle), with an optional N/S/E/W hemisphere word.
double parse_angle(std::string_view text, std::string_view field);     // rad

}  // namespace qis
