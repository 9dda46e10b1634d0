#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bmf/factors.hpp"
#include "bmf/norms.hpp"
#include "bmf/sampling.hpp"

using namespace bmf;

namespace {

Polynomial poly(std::initializer_list<Complex> coeffs) {
  return Polynomial(std::vector<Complex>(coeffs));
}

Polynomial random_poly(int degree, std::uint64_t seed, std::uint64_t stream = 0) {
  return sample_coefficients(DistributionSpec::complex_gaussian(), degree, seed, stream);
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Independent route: ratio of coefficient-formula norms.
double l2_ratio_oracle(const Polynomial& p, double r) {
  const double denom = l2_norm(p, r);
  return denom > 0.0 ? l2_norm(derivative(p), r) / denom : 0.0;
}

}  // namespace

TEST_CASE("factor worked examples") {
  CHECK(factor(Polynomial::constant(4.0), NormSpec::l2()).value == 0.0);
  CHECK(factor(Polynomial(), NormSpec::sup()).value == 0.0);
  CHECK(rel_diff(factor(poly({1.0, 1.0, 1.0}), NormSpec::l2()).value, std::sqrt(5.0 / 3.0)) <=
        1e-14);

  SUBCASE("z^n is extremal for the sup norm") {
    for (int n : {1, 5, 20}) {
      const FactorSample fs = factor(Polynomial::monomial(n), NormSpec::sup());
      REQUIRE(fs.enclosure_bounds.has_value());
      const auto [lo, up] = *fs.enclosure_bounds;
      CHECK(lo <= static_cast<double>(n));
      CHECK(static_cast<double>(n) <= up);
      CHECK(lo <= fs.value);
      CHECK(fs.value <= up);
    }
  }

  SUBCASE("constant polynomial under the sup norm") {
    const FactorSample fs = factor(Polynomial::constant({2.0, 1.0}), NormSpec::sup());
    CHECK(fs.value == 0.0);
    CHECK(fs.enclosure_bounds->first == 0.0);
    CHECK(fs.enclosure_bounds->second == 0.0);
  }
}

TEST_CASE("L2 factor agrees with the norm-ratio route") {
  for (int seed = 0; seed < 6; ++seed) {
    const Polynomial p = random_poly(200, 400 + seed);
    for (double r : {0.3, 0.5, 1.0, 1.5}) {
      CHECK(rel_diff(factor(p, NormSpec::l2(r)).value, l2_ratio_oracle(p, r)) <= 1e-12);
    }
  }
}

TEST_CASE("L2 factor agrees with quadrature at p = 2") {
  const Polynomial p = random_poly(128, 11);
  for (double r : {0.5, 1.0}) {
    const FactorSample exact = factor(p, NormSpec::l2(r));
    const double quad = lp_norm(derivative(p), NormSpec::lp(2.0, r)).value /
                        lp_norm(p, NormSpec::lp(2.0, r)).value;
    CHECK(rel_diff(exact.value, quad) <= 1e-9);
  }
}

TEST_CASE("finite-p factor via quadrature") {
  // ||1+z||_p and its derivative norm 1: M = 1/||1+z||_p.
  const Polynomial p = poly({1.0, 1.0});
  const double m4 = factor(p, NormSpec::lp(4.0)).value;
  CHECK(rel_diff(m4, 1.0 / std::pow(6.0, 0.25)) <= 1e-8);
}

TEST_CASE("trajectory closed forms") {
  SUBCASE("constant stream A_k = 1") {
    std::vector<Complex> ones(257, Complex{1.0, 0.0});
    const auto traj = CoefficientTrajectory::from_values(ones);
    const auto samples = l2_factor_trajectory(traj, 1.0, {1, 2, 16, 256});
    for (const FactorSample& fs : samples) {
      // Independent oracle: brute-force prefix sums.
      double s1 = 0.0;
      for (int k = 1; k <= fs.n; ++k) s1 += static_cast<double>(k) * k;
      const double expected = std::sqrt(s1 / (fs.n + 1.0));
      CHECK(rel_diff(fs.value, expected) <= 1e-13);
    }
    CHECK(rel_diff(samples[1].value, std::sqrt(5.0 / 3.0)) <= 1e-14);
  }

  SUBCASE("stream (1, 1) at n = 1") {
    const auto traj = CoefficientTrajectory::from_values({1.0, 1.0});
    const auto samples = l2_factor_trajectory(traj, 1.0, {1});
    CHECK(rel_diff(samples[0].value, 1.0 / std::numbers::sqrt2) <= 1e-15);
  }
}

TEST_CASE("trajectory equals per-prefix factors") {
  const auto traj = sample_trajectory(DistributionSpec::complex_gaussian(), 300, 5, 2);
  for (double r : {0.5, 1.0, 2.0}) {
    const auto samples = l2_factor_trajectory(traj, r, {1, 3, 10, 50, 300});
    for (const FactorSample& fs : samples) {
      const Polynomial prefix(
          std::vector<Complex>(traj.values.begin(), traj.values.begin() + fs.n + 1));
      CHECK(rel_diff(fs.value, l2_ratio_oracle(prefix, r)) <= 1e-12);
    }
  }
}

TEST_CASE("trajectory monotone in n for r < 1") {
  const auto traj = sample_trajectory(DistributionSpec::complex_gaussian(), 800, 6, 0);
  std::vector<int> all_n(800);
  for (int k = 0; k < 800; ++k) all_n[static_cast<std::size_t>(k)] = k + 1;
  const auto samples = l2_factor_trajectory(traj, 0.5, all_n);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    CHECK(samples[i].value >= samples[i - 1].value - 1e-12);
  }
}

TEST_CASE("trajectory state stays in range for r > 1 at large degree") {
  const auto traj = sample_trajectory(DistributionSpec::complex_gaussian(), 2000, 7, 0);
  const auto samples = l2_factor_trajectory(traj, 2.0, {2000});
  CHECK(std::isfinite(samples[0].value));
  // R M_n / n concentrates near 1 at this depth.
  CHECK(std::abs(2.0 * samples[0].value / 2000.0 - 1.0) <= 0.05);
}

TEST_CASE("degenerate all-zero prefixes emit 0") {
  const auto traj = CoefficientTrajectory::from_values({0.0, 0.0, 1.0, 1.0});
  const auto samples = l2_factor_trajectory(traj, 0.5, {1, 2, 3});
  CHECK(samples[0].value == 0.0);
  CHECK(samples[1].value > 0.0);
  CHECK(samples[2].value > 0.0);
}

TEST_CASE("trajectory argument validation") {
  const auto traj = CoefficientTrajectory::from_values({1.0, 1.0, 1.0});
  CHECK_THROWS_AS(l2_factor_trajectory(traj, 1.0, {5}), std::invalid_argument);
  CHECK_THROWS_AS(l2_factor_trajectory(traj, 1.0, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(l2_factor_trajectory(traj, 0.0), std::invalid_argument);
  CHECK(geometric_degree_grid(20) == std::vector<int>{2, 4, 8, 16, 20});
  CHECK(geometric_degree_grid(16) == std::vector<int>{2, 4, 8, 16});
  CHECK(geometric_degree_grid(1) == std::vector<int>{1});
}

TEST_CASE("state sums are nondecreasing for r <= 1") {
  L2TrajectoryState state(0.5);
  double prev_s0 = 0.0, prev_s1 = 0.0;
  for (int k = 0; k < 200; ++k) {
    state.advance(sample_coefficient(DistributionSpec::complex_gaussian(), 3, 0, k));
    CHECK(state.s0() >= prev_s0);
    CHECK(state.s1() >= prev_s1);
    prev_s0 = state.s0();
    prev_s1 = state.s1();
  }
}

TEST_CASE("degree bound M <= n/r") {
  for (int seed = 0; seed < 5; ++seed) {
    const Polynomial p = random_poly(24, 500 + seed);
    for (double r : {0.5, 1.0, 2.0}) {
      CHECK(factor(p, NormSpec::l2(r)).value <= 24.0 / r + 1e-9);
      const FactorSample sup = factor(p, NormSpec::sup(r));
      CHECK(sup.enclosure_bounds->first <= 24.0 / r + 1e-9);
    }
  }
}

TEST_CASE("scale invariance") {
  const Polynomial p = random_poly(30, 21);
  const Complex c{-3.25, 1.5};
  for (const NormSpec& spec : {NormSpec::l2(0.5), NormSpec::lp(1.0), NormSpec::sup()}) {
    const double base = factor(p, spec).value;
    const double scaled = factor(c * p, spec).value;
    CHECK(rel_diff(scaled, base) <= 1e-12);
  }
}

TEST_CASE("coefficient rotation leaves the L2 factor unchanged") {
  const Polynomial p = random_poly(40, 23);
  const Complex omega = std::polar(1.0, 0.91);
  std::vector<Complex> rotated = p.coeffs();
  Complex w{1.0, 0.0};
  for (std::size_t k = 0; k < rotated.size(); ++k) {
    rotated[k] *= w;
    w *= omega;
  }
  const Polynomial q(std::move(rotated));
  for (double r : {0.5, 1.0, 2.0}) {
    CHECK(rel_diff(factor(q, NormSpec::l2(r)).value, factor(p, NormSpec::l2(r)).value) <= 1e-12);
  }
}

TEST_CASE("r * M(r) is nondecreasing in r") {
  for (int seed = 0; seed < 4; ++seed) {
    const Polynomial p = random_poly(30, 600 + seed);
    double prev = 0.0;
    for (int j = 1; j <= 9; ++j) {
      const double r = 0.1 * j;
      const double rm = r * factor(p, NormSpec::l2(r)).value;
      CHECK(rm >= prev - 1e-12);
      prev = rm;
    }
  }
}

TEST_CASE("reciprocal pair identities") {
  SUBCASE("1 + z: both factors are 1/2") {
    const ReciprocalPairResult res = reciprocal_pair_check(poly({1.0, 1.0}), 0.01);
    CHECK(res.p_factor.enclosure_bounds->first <= 0.5);
    CHECK(0.5 <= res.p_factor.enclosure_bounds->second);
    CHECK(res.q_factor.enclosure_bounds->first <= 0.5);
    CHECK(res.sum_upper_at_least_degree);
    CHECK(res.sum_lower_within_slack);
  }

  SUBCASE("z^n: the pair is (n, 0)") {
    const ReciprocalPairResult res = reciprocal_pair_check(Polynomial::monomial(12), 0.01);
    CHECK(res.q_factor.value == 0.0);
    CHECK(res.p_factor.enclosure_bounds->second >= 12.0);
    CHECK(res.sum_upper_at_least_degree);
  }

  SUBCASE("random Gaussian polynomials certify the lower bound") {
    for (int seed = 0; seed < 200; ++seed) {
      const Polynomial p = random_poly(20, 700 + seed);
      const ReciprocalPairResult res = reciprocal_pair_check(p, 0.01);
      CHECK(res.sum_upper_at_least_degree);
      CHECK(res.sum_lower <= res.sum_upper);
    }
  }

  CHECK_THROWS_AS(reciprocal_pair_check(Polynomial(), 0.01), std::invalid_argument);
  CHECK_THROWS_AS(reciprocal_pair_check(Polynomial::constant(1.0), 0.01), std::invalid_argument);
}

TEST_CASE("self-reciprocal factors equal n/2") {
  SUBCASE("1 + z^2") {
    const SelfReciprocalResult res = self_reciprocal_factor_check(poly({1.0, 0.0, 1.0}), 0.01);
    CHECK(res.target == 1.0);
    CHECK(res.contains_target);
    // Raw containment, no inflation needed.
    CHECK(res.factor.enclosure_bounds->first <= 1.0);
    CHECK(1.0 <= res.factor.enclosure_bounds->second);
  }

  SUBCASE("1 + z") {
    const SelfReciprocalResult res = self_reciprocal_factor_check(poly({1.0, 1.0}), 0.01);
    CHECK(res.target == 0.5);
    CHECK(res.contains_target);
  }

  SUBCASE("p times its conjugate reciprocal") {
    for (int seed = 0; seed < 5; ++seed) {
      const Polynomial p = random_poly(10, 900 + seed);
      const Polynomial prod = multiply(p, conjugate_reciprocal(p));
      REQUIRE(is_self_reciprocal(prod, 1e-9));
      const SelfReciprocalResult res = self_reciprocal_factor_check(prod, 0.01);
      CHECK(res.target == 10.0);
      CHECK(res.factor.enclosure_bounds->first <= 10.0 + 1e-9);
      CHECK(10.0 <= res.factor.enclosure_bounds->second + 1e-9);
      CHECK(res.contains_target);
    }
  }

  CHECK_THROWS_AS(self_reciprocal_factor_check(poly({1.0, 2.0}), 0.01), std::invalid_argument);
}
