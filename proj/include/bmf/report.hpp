#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bmf/experiments.hpp"

namespace bmf {

/// Written to <output_dir>/manifest.json before any computation starts, so
/// every result file in the directory is traceable to the exact resolved
/// configuration that produced it. The manifest is the only result file
/// allowed to carry a timestamp.
struct RunManifest {
  std::string config_path;
  std::vector<ExperimentConfig> configs;
  std::string output_dir;
  std::string artifact_version;
  std::string timestamp;  // ISO 8601 UTC
};

RunManifest make_manifest(const std::string& config_path,
                          std::vector<ExperimentConfig> configs, const std::string& output_dir);

/// CSV with header n,statistic,point,stderr,ci_low,ci_high,verdict; numbers
/// at full round-trip precision, locale independent.
std::string render_csv(const ExperimentResult& result);

/// JSON summary of every experiment (checks, estimates, overall verdicts).
std::string render_summary_json(const std::vector<ExperimentResult>& results,
                                const std::string& artifact_version);

/// Static SVG 1.1 line chart of a trajectory diagnostic with its reference
/// line. Deterministic except for the generation-time comment.
std::string render_trajectory_svg(const std::string& title, const TrajectoryDiagnostic& diag,
                                  const std::string& timestamp);

/// Executes every experiment in the manifest, writes one CSV per
/// experiment, one SVG per trajectory diagnostic, and summary.json last.
/// Progress and per-check verdicts go to `log`. Returns 0 iff every check
/// of every experiment passed.
int run(const RunManifest& manifest, int jobs, std::ostream& log);

}  // namespace bmf
