#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "bmf/config.hpp"
#include "bmf/report.hpp"
#include "bmf/selftest.hpp"
#include "bmf/version.hpp"

namespace {

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void list_theorems(std::ostream& out) {
  out << "theorem ids accepted by the config file:\n"
      << "  T1            L2 norm, unit circle: M_n/n -> 1/sqrt(3) along one stream and in mean.\n"
      << "                needs E|A|^2 < inf.\n"
      << "  BL            Lp norm (finite p), unit circle: M_n/n -> 1/sqrt(3) in probability;\n"
      << "                ||P||_p/sqrt(n) -> Gamma(1+p/2)^(1/p). needs real coefficients,\n"
      << "                mean 0, variance 1; p > 2 additionally needs E|A|^(2p) < inf.\n"
      << "  T2            radius r < 1: M_n converges a.s. to a finite positive limit.\n"
      << "                needs E log+|A| < inf.\n"
      << "  P1            radius r < 1, L2: M_n increases to X_{2,r}; E[M_n] converges.\n"
      << "                needs E|A|^2 < inf.\n"
      << "  T3            radius R > 1, L2: R M_n/n -> 1 in probability, plus the exact\n"
      << "                summation-by-parts identity. needs E|A|^2 < inf and a bounded\n"
      << "                density of |A|^2 near 0 (complex_gaussian).\n"
      << "  T4            sup norm, unit circle: E[M_n] >= n/2 via conjugate-reciprocal\n"
      << "                pairs. needs a conjugation-invariant law.\n"
      << "  T5            sup norm, complex Gaussian: E[M_n]/n asymptotically within\n"
      << "                [1/2, sqrt(2/3)]; sup-norm growth statistics for ||P|| and ||P'||.\n"
      << "  AUX_ORTHO     roots-of-unity orthogonality and covariance diagnostics\n"
      << "                (complex_gaussian, degree <= 127).\n"
      << "  AUX_EXTREMES  max_j |P(z_j)|^2 / ((n+1) log(n+1)) against the exponential\n"
      << "                extremes law (complex_gaussian).\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein-Markov factors of random polynomials: simulation and verification"};
  app.set_version_flag("--version", std::string(bmf::kArtifactVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir = "bmf_out";
  std::uint64_t seed_override = 0;
  bool has_seed_override = false;
  double trials_scale = 1.0;
  int jobs = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run every experiment in a config file");
  run_cmd->add_option("config", config_path, "experiment config file")->required();
  run_cmd->add_option("--output-dir", output_dir, "directory for CSV/JSON/SVG results");
  run_cmd->add_option("--seed-override", seed_override, "replace the seed of every experiment")
      ->each([&](const std::string&) { has_seed_override = true; });
  run_cmd->add_option("--trials-scale", trials_scale,
                      "multiply every experiment's trial count (quick/full modes)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--jobs", jobs, "worker threads (0 = auto); results do not depend on it");

  CLI::App* list_cmd = app.add_subcommand("list-theorems", "describe the supported theorem ids");
  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "run the built-in worked-example checks");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    list_theorems(std::cout);
    return 0;
  }
  if (selftest_cmd->parsed()) {
    return bmf::run_selftest(std::cout) == 0 ? 0 : 1;
  }

  try {
    auto configs = bmf::parse_config_file(config_path);
    for (auto& cfg : configs) {
      if (has_seed_override) cfg.seed = seed_override;
      cfg.trials = std::max(1, static_cast<int>(std::lround(cfg.trials * trials_scale)));
    }
    const bmf::RunManifest manifest = bmf::make_manifest(config_path, std::move(configs),
                                                         output_dir);
    return bmf::run(manifest, resolve_jobs(jobs), std::cout);
  } catch (const bmf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
