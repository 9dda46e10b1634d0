#pragma once

#include <cstdint>
#include <vector>

#include "bmf/distributions.hpp"
#include "bmf/polynomial.hpp"

namespace bmf {

/// One seeded coefficient stream truncated at n_max. Sampling is a pure
/// function of (spec, seed, stream_id, index), so the trajectory for a
/// smaller n_max with the same identifiers is exactly a prefix: nested
/// partial sums P_n of a single infinite random series.
struct CoefficientTrajectory {
  DistributionSpec spec;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::vector<Complex> values;

  int n_max() const { return static_cast<int>(values.size()) - 1; }

  /// Deterministic stand-in stream for closed-form checks.
  static CoefficientTrajectory from_values(std::vector<Complex> values);
};

/// The per-index sampler every other entry point is built on. Counter
/// based: no generator state, any index of any stream can be produced
/// independently, in any order, on any thread.
Complex sample_coefficient(const DistributionSpec& spec, std::uint64_t seed,
                           std::uint64_t stream_id, std::uint64_t index);

/// P_n with n+1 i.i.d. coefficients from `spec`.
Polynomial sample_coefficients(const DistributionSpec& spec, int degree, std::uint64_t seed,
                               std::uint64_t stream_id);

CoefficientTrajectory sample_trajectory(const DistributionSpec& spec, int n_max,
                                        std::uint64_t seed, std::uint64_t stream_id);

namespace detail {
// Counter-based PRF word: chained SplitMix64 finalizers over
// (seed, stream, index, word).
std::uint64_t prf_word(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                       std::uint64_t word);
// Uniform in the open interval (0, 1).
double prf_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                   std::uint64_t word);
}  // namespace detail

}  // namespace bmf
