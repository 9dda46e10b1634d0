#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bmf/distributions.hpp"
#include "bmf/polynomial.hpp"

namespace bmf {

/// Monte-Carlo summary: sample mean, its standard error, and the central
/// 95% normal-approximation interval (point +- 1.96 stderr).
struct EstimateResult {
  double point = 0.0;
  double stderr_value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

EstimateResult estimate_from_samples(std::span<const double> samples, std::uint64_t seed);

/// Runs `fn` once per trial on P_n sampled with stream_id = trial index and
/// collects the returned statistics column-wise. Trials are dispatched to
/// `jobs` threads over fixed-size blocks, but every value lands in a buffer
/// slot keyed by trial index and reductions happen in index order, so the
/// result is a pure function of the arguments no matter the worker count.
/// A failing statistic is rethrown with the offending (seed, stream_id).
///
/// `fn(polynomial, trial)` must return exactly `n_stats` values.
std::vector<std::vector<double>> per_trial_statistics(
    const DistributionSpec& dist, int degree, int trials, std::uint64_t seed, int jobs,
    std::size_t n_stats, const std::function<std::vector<double>(const Polynomial&, int)>& fn);

/// Dispatches body(i) for i in [0, count) over `jobs` threads in fixed
/// contiguous blocks. Rethrows the failure with the smallest index.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

}  // namespace bmf
