#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "pointnls/convergence.hpp"

namespace pointnls {

// Loads a sweep config from JSON or TOML (flat tables, numbers, strings,
// booleans, inline arrays). Unknown keys are rejected.
SweepConfig load_config(const std::string& path);
SweepConfig parse_config_json_text(const std::string& text);
SweepConfig parse_config_toml_text(const std::string& text);

std::string config_to_json_text(const SweepConfig& cfg);
std::string report_to_json_text(const ConvergenceReport& rep);
std::string run_manifest_text(const SweepConfig& cfg, double eps, int steps,
                              double wall_ms);

// x, rho(x) profile table.
std::pair<std::vector<double>, std::vector<double>> read_profile_csv(
    const std::string& path);

// Per-run artifacts (paths derived from out_dir and eps).
void write_scaled_run_csv(const std::string& out_dir, const SweepConfig& cfg,
                          const ScaledRun& run,
                          const std::array<TimeSeries, 4>& y,
                          const RunMetrics& m);
void write_limit_run_csv(const std::string& out_dir, const SweepConfig& cfg,
                         const ChargeTrajectory& traj, const PhysParams& params,
                         const RunMetrics& m);

// report.json + errors.csv under report.config.out_dir.
void persist_report(const ConvergenceReport& rep);

std::string version_string();

}  // namespace pointnls
