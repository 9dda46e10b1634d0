#include "bmf/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bmf/config.hpp"
#include "bmf/version.hpp"
#include "numeric_io.hpp"

namespace bmf {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

ordered_json check_to_json(const CheckResult& check) {
  ordered_json j;
  j["name"] = check.name;
  j["observed"] = check.observed;
  j["target"] = check.target;
  j["tolerance"] = check.tolerance;
  j["pass"] = check.pass;
  j["detail"] = check.detail;
  return j;
}

}  // namespace

RunManifest make_manifest(const std::string& config_path,
                          std::vector<ExperimentConfig> configs, const std::string& output_dir) {
  RunManifest manifest;
  manifest.config_path = config_path;
  manifest.configs = std::move(configs);
  manifest.output_dir = output_dir;
  manifest.artifact_version = kArtifactVersion;
  manifest.timestamp = utc_timestamp();
  return manifest;
}

std::string render_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "n,statistic,point,stderr,ci_low,ci_high,verdict\n";
  for (const StatRow& row : result.rows) {
    out << row.n << ',' << row.statistic << ',' << detail::format_double(row.point) << ','
        << detail::format_double(row.stderr_value) << ',' << detail::format_double(row.ci_low)
        << ',' << detail::format_double(row.ci_high) << ',' << row.verdict << '\n';
  }
  return out.str();
}

std::string render_summary_json(const std::vector<ExperimentResult>& results,
                                const std::string& artifact_version) {
  ordered_json root;
  root["artifact_version"] = artifact_version;
  root["manifest"] = "manifest.json";
  bool all_pass = true;
  ordered_json experiments = ordered_json::array();
  for (const ExperimentResult& result : results) {
    ordered_json j;
    j["name"] = result.config.name;
    j["theorem"] = theorem_name(result.config.theorem);
    j["dist"] = result.config.dist.name();
    j["seed"] = result.config.seed;
    j["trials"] = result.config.trials;
    j["all_pass"] = result.all_pass();
    ordered_json checks = ordered_json::array();
    for (const CheckResult& check : result.checks) checks.push_back(check_to_json(check));
    j["checks"] = checks;
    ordered_json estimates = ordered_json::array();
    for (const StatRow& row : result.rows) {
      ordered_json e;
      e["n"] = row.n;
      e["statistic"] = row.statistic;
      e["point"] = row.point;
      e["stderr"] = row.stderr_value;
      e["ci_low"] = row.ci_low;
      e["ci_high"] = row.ci_high;
      if (!row.verdict.empty()) e["verdict"] = row.verdict;
      estimates.push_back(e);
    }
    j["estimates"] = estimates;
    experiments.push_back(j);
    all_pass = all_pass && result.all_pass();
  }
  root["experiments"] = experiments;
  root["all_pass"] = all_pass;
  return root.dump(2) + "\n";
}

std::string render_trajectory_svg(const std::string& title, const TrajectoryDiagnostic& diag,
                                  const std::string& timestamp) {
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;

  // Log x-axis when the degree grid spans more than a decade.
  const double x_min = static_cast<double>(diag.n_grid.front());
  const double x_max = static_cast<double>(diag.n_grid.back());
  const bool log_x = x_max / std::max(x_min, 1.0) >= 10.0;
  auto x_coord = [&](double n) {
    if (x_max == x_min) return ml + plot_w / 2.0;
    const double t = log_x ? (std::log(n) - std::log(x_min)) / (std::log(x_max) - std::log(x_min))
                           : (n - x_min) / (x_max - x_min);
    return ml + t * plot_w;
  };

  double y_min = diag.m_values.front();
  double y_max = y_min;
  for (double v : diag.m_values) {
    y_min = std::min(y_min, v);
    y_max = std::max(y_max, v);
  }
  if (diag.reference) {
    y_min = std::min(y_min, *diag.reference);
    y_max = std::max(y_max, *diag.reference);
  }
  const double pad = std::max(0.05 * (y_max - y_min), 1e-6);
  y_min -= pad;
  y_max += pad;
  auto y_coord = [&](double v) { return mt + (1.0 - (v - y_min) / (y_max - y_min)) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- generated " << timestamp << " -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << width / 2.0 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
  svg << "  <rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Axis labels: endpoints only; the CSV carries the exact numbers.
  svg << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  svg << "    <text x=\"" << ml << "\" y=\"" << height - mb + 18.0
      << "\" text-anchor=\"middle\">" << diag.n_grid.front() << "</text>\n";
  svg << "    <text x=\"" << ml + plot_w << "\" y=\"" << height - mb + 18.0
      << "\" text-anchor=\"middle\">" << diag.n_grid.back() << "</text>\n";
  svg << "    <text x=\"" << ml + plot_w / 2.0 << "\" y=\"" << height - 12.0
      << "\" text-anchor=\"middle\">n" << (log_x ? " (log scale)" : "") << "</text>\n";
  svg << "    <text x=\"" << ml - 8.0 << "\" y=\"" << y_coord(y_min) + 4.0
      << "\" text-anchor=\"end\">" << detail::format_double(y_min) << "</text>\n";
  svg << "    <text x=\"" << ml - 8.0 << "\" y=\"" << y_coord(y_max) + 4.0
      << "\" text-anchor=\"end\">" << detail::format_double(y_max) << "</text>\n";
  svg << "    <text x=\"16\" y=\"" << mt + plot_h / 2.0 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << mt + plot_h / 2.0 << ")\">" << diag.statistic
      << "</text>\n";
  svg << "  </g>\n";

  if (diag.reference) {
    const double ry = y_coord(*diag.reference);
    svg << "  <line x1=\"" << ml << "\" y1=\"" << ry << "\" x2=\"" << ml + plot_w << "\" y2=\""
        << ry << "\" stroke=\"#c00\" stroke-dasharray=\"6,4\"/>\n";
    svg << "  <text x=\"" << ml + plot_w - 4.0 << "\" y=\"" << ry - 5.0
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#c00\">"
        << detail::format_double(*diag.reference) << "</text>\n";
  }

  svg << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < diag.m_values.size(); ++i) {
    if (i) svg << ' ';
    svg << x_coord(static_cast<double>(diag.n_grid[i])) << ',' << y_coord(diag.m_values[i]);
  }
  svg << "\"/>\n";
  for (std::size_t i = 0; i < diag.m_values.size(); ++i) {
    svg << "  <circle cx=\"" << x_coord(static_cast<double>(diag.n_grid[i])) << "\" cy=\""
        << y_coord(diag.m_values[i]) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

int run(const RunManifest& manifest, int jobs, std::ostream& log) {
  if (manifest.configs.empty()) {
    log << "warning: no experiments configured; nothing to do\n";
    return 0;
  }

  const std::filesystem::path out_dir(manifest.output_dir);
  std::filesystem::create_directories(out_dir);

  ordered_json mj;
  mj["config_path"] = manifest.config_path;
  mj["output_dir"] = manifest.output_dir;
  mj["artifact_version"] = manifest.artifact_version;
  mj["timestamp"] = manifest.timestamp;
  mj["experiments"] = ordered_json::array();
  for (const ExperimentConfig& cfg : manifest.configs) {
    ordered_json e;
    e["name"] = cfg.name;
    e["theorem"] = theorem_name(cfg.theorem);
    e["resolved_config"] = emit_config({cfg});
    mj["experiments"].push_back(e);
  }
  write_file(out_dir / "manifest.json", mj.dump(2) + "\n");

  std::vector<ExperimentResult> results;
  results.reserve(manifest.configs.size());
  bool all_pass = true;
  for (const ExperimentConfig& cfg : manifest.configs) {
    log << "running " << cfg.name << " (" << theorem_name(cfg.theorem) << ", "
        << cfg.dist.name() << ", trials=" << cfg.trials << ")\n";
    ExperimentResult result = run_experiment(cfg, jobs);
    for (const CheckResult& check : result.checks) {
      log << "  [" << (check.pass ? "pass" : "FAIL") << "] " << check.name
          << ": observed=" << detail::format_double(check.observed)
          << " target=" << detail::format_double(check.target)
          << " tol=" << detail::format_double(check.tolerance) << "\n";
    }
    write_file(out_dir / (cfg.name + ".csv"), render_csv(result));
    for (const TrajectoryDiagnostic& diag : result.trajectories) {
      write_file(out_dir / (cfg.name + "." + diag.statistic + ".svg"),
                 render_trajectory_svg(cfg.name, diag, manifest.timestamp));
    }
    all_pass = all_pass && result.all_pass();
    results.push_back(std::move(result));
  }
  write_file(out_dir / "summary.json", render_summary_json(results, manifest.artifact_version));

  for (const ExperimentResult& result : results) {
    if (!result.all_pass()) {
      log << "FAILED: " << result.config.name << "\n";
      for (const CheckResult& check : result.checks) {
        if (!check.pass) log << "  " << check.name << "\n";
      }
    }
  }
  log << (all_pass ? "all experiments passed\n" : "some experiments failed\n");
  return all_pass ? 0 : 1;
}

}  // namespace bmf
