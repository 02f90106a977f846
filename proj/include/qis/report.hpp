#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qis/bound.hpp"
#include "qis/config.hpp"
#include "qis/frame_scan.hpp"
#include "qis/fringe.hpp"

namespace qis {

inline constexpr char kSeriesCsvHeader[] =
    "t_utc,t_rel_s,r,beta_x,v_qi_min_over_c,capped_flag";
inline constexpr char kScanCsvHeader[] =
    "cell,speed_m_s,ra_deg,dec_deg,alignment,n_crossings,bound_over_c,status";
inline constexpr char kCountsCsvHeader[] = "t_bin_start_utc,counts";

void write_series_csv(const std::filesystem::path& path,
                      const ExperimentRecord& rec, const BoundSeries& series);
void write_scan_csv(const std::filesystem::path& path,
                    const std::vector<ScanRow>& rows);
void write_counts_csv(const std::filesystem::path& path,
                      const ExperimentRecord& rec,
                      const std::vector<BinCount>& counts);

struct AnalyzeOutput {
  BoundSeries series;
  AlignmentAssessment alignment;
  double theta0;
  double phi0;
  double lab_speed;  // m/s, |composed velocity| at t_rel = 0
  std::filesystem::path series_csv;
  std::string report_text;
};

AnalyzeOutput run_analyze(const ParsedConfig& cfg,
                          const std::filesystem::path& out_dir, double step);

struct ScanOutput {
  std::vector<ScanRow> rows;
  std::filesystem::path scan_csv;
  std::string report_text;
};

ScanOutput run_scan(const ParsedConfig& cfg,
                    const std::filesystem::path& out_dir, double step,
                    int threads = 0);

struct PlanOutput {
  PlanInput input;
  PlanResult result;
  std::string report_text;
};

PlanOutput run_plan(const ParsedConfig& cfg);

struct SimulateOutput {
  std::vector<BinCount> counts;
  CollapseReport collapse;
  std::filesystem::path counts_csv;
  std::string report_text;
};

SimulateOutput run_simulate(const ParsedConfig& cfg,
                            const std::filesystem::path& out_dir,
                            std::optional<std::uint64_t> seed_override);

// Full command-line entry point: analyze | scan | plan | simulate, each with
// --config, --out-dir and optional --step / --seed / --threads.  Reports go
// to `out`.  Returns 0, or 2 for config errors, 3 for domain errors.
int run_cli(int argc, const char* const* argv, std::ostream& out);

}  // namespace qis
