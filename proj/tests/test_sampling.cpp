#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bmf/sampling.hpp"
#include "bmf/statistics.hpp"

using namespace bmf;

namespace {

// Kolmogorov-Smirnov statistic against a CDF; critical value at alpha=0.01
// is about 1.628/sqrt(n).
double ks_statistic(std::vector<double> sample, double (*cdf)(double)) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

double exp1_cdf(double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x); }

std::vector<double> abs_sq_samples(const DistributionSpec& spec, int count, std::uint64_t seed,
                                   std::uint64_t stream) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = std::norm(sample_coefficient(spec, seed, stream, k));
  }
  return out;
}

}  // namespace

TEST_CASE("rademacher support") {
  const Polynomial p = sample_coefficients(DistributionSpec::rademacher(), 500, 3, 1);
  for (const Complex& c : p.coeffs()) {
    CHECK((c == Complex{1.0, 0.0} || c == Complex{-1.0, 0.0}));
  }
}

TEST_CASE("determinism: identical identifiers give identical vectors") {
  for (const DistributionSpec& spec :
       {DistributionSpec::complex_gaussian(), DistributionSpec::real_gaussian(),
        DistributionSpec::rademacher(), DistributionSpec::uniform_symmetric(2.0),
        DistributionSpec::custom_discrete({{{1.0, 0.0}, 0.25}, {{0.0, 1.0}, 0.75}})}) {
    const Polynomial a = sample_coefficients(spec, 64, 42, 9);
    const Polynomial b = sample_coefficients(spec, 64, 42, 9);
    CHECK(a.coeffs() == b.coeffs());
    const Polynomial c = sample_coefficients(spec, 64, 43, 9);
    CHECK(a.coeffs() != c.coeffs());
  }
}

TEST_CASE("prefix property for every kind") {
  for (const DistributionSpec& spec :
       {DistributionSpec::complex_gaussian(), DistributionSpec::real_gaussian(),
        DistributionSpec::rademacher(), DistributionSpec::uniform_symmetric(1.0),
        DistributionSpec::custom_discrete({{{2.0, 0.0}, 0.5}, {{-2.0, 0.0}, 0.5}})}) {
    const CoefficientTrajectory long_traj = sample_trajectory(spec, 1000, 7, 5);
    const CoefficientTrajectory short_traj = sample_trajectory(spec, 10, 7, 5);
    REQUIRE(short_traj.values.size() == 11);
    for (std::size_t k = 0; k < short_traj.values.size(); ++k) {
      CHECK(long_traj.values[k] == short_traj.values[k]);
    }
  }
  CHECK(sample_trajectory(DistributionSpec::complex_gaussian(), 0, 1, 1).values.size() == 1);
}

TEST_CASE("complex gaussian moments and |A|^2 law") {
  const int n = 100000;
  const auto sq = abs_sq_samples(DistributionSpec::complex_gaussian(), n, 2024, 0);
  const double m = mean(sq);
  // Var(|A|^2) = 1 for Exp(1), so stderr = 1/sqrt(n).
  const double se = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(m - 1.0) <= 3.0 * se);
  CHECK(ks_statistic(sq, exp1_cdf) <= 1.628 / std::sqrt(static_cast<double>(n)));

  // Re and Im each have variance 1/2.
  std::vector<double> re(n), im(n);
  for (int k = 0; k < n; ++k) {
    const Complex a = sample_coefficient(DistributionSpec::complex_gaussian(), 2024, 1, k);
    re[static_cast<std::size_t>(k)] = a.real();
    im[static_cast<std::size_t>(k)] = a.imag();
  }
  CHECK(std::abs(mean(re)) <= 3.0 * std::sqrt(0.5 / n));
  CHECK(std::abs(mean(im)) <= 3.0 * std::sqrt(0.5 / n));
  const double var_re = sample_stddev(re, mean(re));
  CHECK(std::abs(var_re * var_re - 0.5) <= 0.02);
}

TEST_CASE("real laws: mean 0, second moment 1 within 3 stderr") {
  const int n = 100000;
  for (const DistributionSpec& spec :
       {DistributionSpec::real_gaussian(), DistributionSpec::rademacher()}) {
    std::vector<double> val(n), sq(n);
    for (int k = 0; k < n; ++k) {
      const double a = sample_coefficient(spec, 99, 0, k).real();
      val[static_cast<std::size_t>(k)] = a;
      sq[static_cast<std::size_t>(k)] = a * a;
    }
    CHECK(std::abs(mean(val)) <= 3.0 / std::sqrt(static_cast<double>(n)));
    // Var(A^2) = 2 for the Gaussian, 0 for Rademacher.
    CHECK(std::abs(mean(sq) - 1.0) <= 3.0 * std::sqrt(2.0 / n));
  }
}

TEST_CASE("uniform_symmetric support and moments") {
  const double a = 1.7320508075688772;  // variance 1
  const DistributionSpec spec = DistributionSpec::uniform_symmetric(a);
  const int n = 100000;
  std::vector<double> val(n);
  for (int k = 0; k < n; ++k) {
    const Complex c = sample_coefficient(spec, 5, 0, k);
    CHECK(c.imag() == 0.0);
    CHECK(std::abs(c.real()) <= a);
    val[static_cast<std::size_t>(k)] = c.real();
  }
  CHECK(std::abs(mean(val)) <= 3.0 * a / std::sqrt(3.0 * n));
  CHECK(std::abs(spec.second_moment() - 1.0) <= 1e-12);
}

TEST_CASE("custom_discrete sampling and validation") {
  CHECK_THROWS_AS(DistributionSpec::custom_discrete({{{1.0, 0.0}, 0.5}, {{2.0, 0.0}, 0.6}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DistributionSpec::custom_discrete({{{1.0, 0.0}, -0.5}, {{2.0, 0.0}, 1.5}}),
                  std::invalid_argument);
  // Non-trivial law: P(A = 0) < 1.
  CHECK_THROWS_AS(DistributionSpec::custom_discrete({{{0.0, 0.0}, 1.0}}), std::invalid_argument);
  CHECK_NOTHROW(DistributionSpec::custom_discrete({{{0.0, 0.0}, 0.5}, {{1.0, 0.0}, 0.5}}));

  const DistributionSpec spec =
      DistributionSpec::custom_discrete({{{1.0, 0.0}, 0.2}, {{0.0, -1.0}, 0.8}});
  int hits = 0;
  const int n = 50000;
  for (int k = 0; k < n; ++k) {
    const Complex c = sample_coefficient(spec, 8, 0, k);
    const bool first = c == Complex{1.0, 0.0};
    CHECK((first || c == Complex{0.0, -1.0}));
    hits += first ? 1 : 0;
  }
  const double freq = static_cast<double>(hits) / n;
  CHECK(std::abs(freq - 0.2) <= 3.0 * std::sqrt(0.2 * 0.8 / n));
}

TEST_CASE("distinct streams are empirically uncorrelated") {
  const int n = 10000;
  const auto a = abs_sq_samples(DistributionSpec::complex_gaussian(), n, 77, 0);
  const auto b = abs_sq_samples(DistributionSpec::complex_gaussian(), n, 77, 1);
  const double ma = mean(a);
  const double mb = mean(b);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (int k = 0; k < n; ++k) {
    cov += (a[static_cast<std::size_t>(k)] - ma) * (b[static_cast<std::size_t>(k)] - mb);
    va += (a[static_cast<std::size_t>(k)] - ma) * (a[static_cast<std::size_t>(k)] - ma);
    vb += (b[static_cast<std::size_t>(k)] - mb) * (b[static_cast<std::size_t>(k)] - mb);
  }
  CHECK(std::abs(cov / std::sqrt(va * vb)) <= 0.05);
}

TEST_CASE("capability flags") {
  CHECK(DistributionSpec::complex_gaussian().conjugation_invariant());
  CHECK(DistributionSpec::rademacher().conjugation_invariant());
  CHECK(DistributionSpec::complex_gaussian().modulus_sq_density_bounded_near_zero());
  CHECK_FALSE(DistributionSpec::real_gaussian().modulus_sq_density_bounded_near_zero());
  CHECK_FALSE(DistributionSpec::rademacher().modulus_density_bounded_near_zero());
  CHECK(DistributionSpec::uniform_symmetric(1.0).modulus_density_bounded_near_zero());
  CHECK_FALSE(DistributionSpec::complex_gaussian().is_real());
  CHECK(DistributionSpec::rademacher().is_real());

  const DistributionSpec sym =
      DistributionSpec::custom_discrete({{{0.0, 1.0}, 0.5}, {{0.0, -1.0}, 0.5}});
  CHECK(sym.conjugation_invariant());
  const DistributionSpec asym =
      DistributionSpec::custom_discrete({{{0.0, 1.0}, 0.9}, {{0.0, -1.0}, 0.1}});
  CHECK_FALSE(asym.conjugation_invariant());

  DistributionSpec heavy = DistributionSpec::complex_gaussian();
  heavy.declared().finite_second_moment = false;
  CHECK_FALSE(heavy.finite_second_moment());
  CHECK(DistributionSpec::complex_gaussian().finite_all_moments());
}

TEST_CASE("trajectory metadata") {
  const CoefficientTrajectory traj =
      sample_trajectory(DistributionSpec::real_gaussian(), 5, 11, 4);
  CHECK(traj.n_max() == 5);
  CHECK(traj.seed == 11);
  CHECK(traj.stream_id == 4);
  CHECK_THROWS_AS(CoefficientTrajectory::from_values({}), std::invalid_argument);
}
