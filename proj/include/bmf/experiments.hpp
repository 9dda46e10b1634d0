#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmf/distributions.hpp"
#include "bmf/monte_carlo.hpp"
#include "bmf/norms.hpp"
#include "bmf/polynomial.hpp"

namespace bmf {

/// Raised when a configuration violates the moment/density/symmetry
/// hypotheses of the limit theorem it targets. Never downgraded to a
/// silent fallback.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TheoremId {
  BL,            // Lp unit circle: M_n/n -> 1/sqrt(3) in probability, norm scalings
  T1,            // L2 unit circle: M_n/n -> 1/sqrt(3) almost surely
  T2,            // radius r < 1: M_n bounded/convergent along one stream
  P1,            // radius r < 1, L2: monotone convergence, E[M_n] converges
  T3,            // radius R > 1, L2: R M_n/n -> 1 in probability, Abel identity
  T4,            // sup norm: E[M_n] >= n/2 under conjugation-invariant laws
  T5,            // sup norm, complex Gaussian: n/2 <= E[M_n] <= n sqrt(2/3)
  AUX_ORTHO,     // roots-of-unity orthogonality / covariance diagnostics
  AUX_EXTREMES,  // extremes of |P_n|^2 at roots of unity vs log(n+1)
};

std::string theorem_name(TheoremId id);
TheoremId theorem_from_name(const std::string& name);

struct ExperimentConfig {
  std::string name = "experiment";
  TheoremId theorem = TheoremId::T1;
  DistributionSpec dist = DistributionSpec::complex_gaussian();
  NormSpec norm = NormSpec::l2();
  std::vector<int> degrees;
  int trials = 1;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;

  double tol(const std::string& key, double fallback) const;

  /// Structural validation plus the theorem's hypothesis flags; throws
  /// std::invalid_argument or HypothesisError.
  void validate() const;
};

/// Names of the tolerance keys a given theorem accepts (config validation
/// rejects anything else).
std::vector<std::string> allowed_tolerance_keys(TheoremId id);

struct CheckResult {
  std::string name;
  double observed = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Empirical stand-in for an almost-sure limit along one nested stream.
struct TrajectoryDiagnostic {
  std::string statistic;
  std::vector<int> n_grid;
  std::vector<double> m_values;
  double limit_estimate = 0.0;     // value at the largest n
  double stabilization_gap = 0.0;  // max |m(n_i) - m(n_last)| over the top half
  std::optional<double> reference; // horizontal reference line for charts
};

/// One CSV row: a statistic at a degree, optionally carrying a verdict.
struct StatRow {
  int n = 0;
  std::string statistic;
  double point = 0.0;
  double stderr_value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::string verdict;  // "pass", "fail" or "" for informational rows
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<StatRow> rows;
  std::vector<TrajectoryDiagnostic> trajectories;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

/// Sample mean of `statistic` over config.trials independent polynomials of
/// degree config.degrees.back(), stream_id = trial index. Deterministic for
/// fixed config regardless of `jobs`.
EstimateResult monte_carlo_expectation(const ExperimentConfig& config,
                                       const std::function<double(const Polynomial&)>& statistic,
                                       int jobs = 1);

ExperimentResult run_unit_circle_l2(const ExperimentConfig& config, int jobs = 1);       // T1
ExperimentResult run_lp_unit_circle(const ExperimentConfig& config, int jobs = 1);       // BL
ExperimentResult run_subunit_radius(const ExperimentConfig& config, int jobs = 1);       // T2, P1
ExperimentResult run_superunit_radius(const ExperimentConfig& config, int jobs = 1);     // T3
ExperimentResult run_sup_norm_bounds(const ExperimentConfig& config, int jobs = 1);      // T4, T5
ExperimentResult run_roots_of_unity_diagnostics(const ExperimentConfig& config,
                                                int jobs = 1);  // AUX_*

/// Dispatch on config.theorem.
ExperimentResult run_experiment(const ExperimentConfig& config, int jobs = 1);

}  // namespace bmf
