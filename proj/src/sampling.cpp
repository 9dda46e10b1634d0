#include "bmf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bmf {

namespace detail {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t prf_word(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                       std::uint64_t word) {
  std::uint64_t h = mix64(seed ^ 0x243F6A8885A308D3ull);
  h = mix64(h ^ stream);
  h = mix64(h ^ index);
  h = mix64(h ^ word);
  return h;
}

double prf_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                   std::uint64_t word) {
  const std::uint64_t bits = prf_word(seed, stream, index, word);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

Complex sample_coefficient(const DistributionSpec& spec, std::uint64_t seed,
                           std::uint64_t stream_id, std::uint64_t index) {
  using detail::prf_uniform;
  switch (spec.kind()) {
    case DistKind::complex_gaussian: {
      // A = sqrt(E) e^{i theta} with E ~ Exp(1), theta uniform: Re and Im
      // are independent N(0, 1/2) and |A|^2 is unit-rate exponential.
      const double u1 = prf_uniform(seed, stream_id, index, 0);
      const double u2 = prf_uniform(seed, stream_id, index, 1);
      const double mag = std::sqrt(-std::log(u1));
      return std::polar(mag, 2.0 * std::numbers::pi * u2);
    }
    case DistKind::real_gaussian: {
      const double u1 = prf_uniform(seed, stream_id, index, 0);
      const double u2 = prf_uniform(seed, stream_id, index, 1);
      return {std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2), 0.0};
    }
    case DistKind::rademacher: {
      const std::uint64_t bits = detail::prf_word(seed, stream_id, index, 0);
      return {(bits & 1ull) ? 1.0 : -1.0, 0.0};
    }
    case DistKind::uniform_symmetric: {
      const double u = prf_uniform(seed, stream_id, index, 0);
      return {spec.half_width() * (2.0 * u - 1.0), 0.0};
    }
    case DistKind::custom_discrete: {
      const double u = prf_uniform(seed, stream_id, index, 0);
      const auto& cum = spec.cumulative_;
      const auto it = std::lower_bound(cum.begin(), cum.end(), u);
      const std::size_t j = std::min(static_cast<std::size_t>(it - cum.begin()),
                                     spec.atoms().size() - 1);
      return spec.atoms()[j].value;
    }
  }
  throw std::logic_error("sample_coefficient: unhandled distribution kind");
}

Polynomial sample_coefficients(const DistributionSpec& spec, int degree, std::uint64_t seed,
                               std::uint64_t stream_id) {
  if (degree < 0) throw std::invalid_argument("sample_coefficients: degree < 0");
  std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs[k] = sample_coefficient(spec, seed, stream_id, k);
  }
  return Polynomial(std::move(coeffs));
}

CoefficientTrajectory sample_trajectory(const DistributionSpec& spec, int n_max,
                                        std::uint64_t seed, std::uint64_t stream_id) {
  if (n_max < 0) throw std::invalid_argument("sample_trajectory: n_max < 0");
  CoefficientTrajectory traj{spec, seed, stream_id, {}};
  traj.values.resize(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t k = 0; k < traj.values.size(); ++k) {
    traj.values[k] = sample_coefficient(spec, seed, stream_id, k);
  }
  return traj;
}

CoefficientTrajectory CoefficientTrajectory::from_values(std::vector<Complex> values) {
  if (values.empty()) {
    throw std::invalid_argument("CoefficientTrajectory: values must be nonempty");
  }
  return CoefficientTrajectory{DistributionSpec::complex_gaussian(), 0, 0, std::move(values)};
}

}  // namespace bmf
