#pragma once

#include <span>
#include <vector>

namespace bmf {

/// Recursive pairwise summation: O(log n) rounding-error growth and a fixed
/// reduction tree, so results do not depend on chunking or thread count.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

/// Unbiased sample standard deviation; 0 for fewer than two values.
double sample_stddev(std::span<const double> values, double mean_value);

/// Linear-interpolation quantile of an already sorted sample, q in [0,1].
double quantile_sorted(std::span<const double> sorted, double q);

/// Sorts a copy and interpolates.
double quantile(std::vector<double> values, double q);

}  // namespace bmf
