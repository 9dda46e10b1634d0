#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bmf/norms.hpp"
#include "bmf/polynomial.hpp"
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

}  // namespace

TEST_CASE("norm spec validation") {
  CHECK_THROWS_AS(NormSpec::lp(0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::lp(-1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::lp(2.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::sup(1.0, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::sup(1.0, 1.0).validate(), std::invalid_argument);
  NormSpec bad = NormSpec::l2();
  bad.quad_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK(NormSpec::sup().is_sup());
  CHECK_FALSE(NormSpec::l2().is_sup());
}

TEST_CASE("l2 norm closed forms") {
  CHECK(rel_diff(l2_norm(poly({1.0, 1.0}), 1.0), std::numbers::sqrt2) <= 1e-14);
  for (int n : {1, 5, 17}) {
    for (double r : {0.5, 1.0, 2.0}) {
      CHECK(rel_diff(l2_norm(Polynomial::monomial(n), r), std::pow(r, n)) <= 1e-13);
    }
  }
  CHECK(l2_norm(Polynomial(), 1.0) == 0.0);
}

TEST_CASE("l2 vs quadrature at p = 2") {
  for (int seed = 0; seed < 6; ++seed) {
    const Polynomial p = random_poly(512, 100 + seed);
    for (double r : {0.5, 1.0, 2.0}) {
      const double exact = l2_norm(p, r);
      const LpNormResult quad = lp_norm(p, NormSpec::lp(2.0, r));
      CHECK(quad.converged);
      CHECK(rel_diff(quad.value, exact) <= 1e-10);
    }
  }
}

TEST_CASE("lp norm closed forms") {
  for (double p : {0.5, 1.0, 3.0}) {
    for (double r : {0.5, 1.0, 2.0}) {
      CHECK(rel_diff(lp_norm(Polynomial::constant({3.0, 4.0}), NormSpec::lp(p, r)).value, 5.0) <=
            1e-9);
    }
  }
  // (1/2pi) Int (2 + 2 cos t)^2 dt = 6, so ||1+z||_4 = 6^{1/4}.
  CHECK(rel_diff(lp_norm(poly({1.0, 1.0}), NormSpec::lp(4.0)).value, std::pow(6.0, 0.25)) <=
        1e-9);
  CHECK(lp_norm(Polynomial(), NormSpec::lp(1.0)).value == 0.0);
  CHECK_THROWS_AS(lp_norm(poly({1.0}), NormSpec::sup()), std::invalid_argument);
}

TEST_CASE("lp monotone in p") {
  const Polynomial p = random_poly(48, 7);
  for (double r : {0.5, 1.0}) {
    double prev = 0.0;
    for (double q : {0.5, 1.0, 2.0, 4.0}) {
      const double v = lp_norm(p, NormSpec::lp(q, r)).value;
      CHECK(v >= prev * (1.0 - 1e-9));
      prev = v;
    }
  }
}

TEST_CASE("quadrature refinement is stable") {
  for (int seed = 7; seed < 11; ++seed) {
    const Polynomial p = random_poly(40, static_cast<std::uint64_t>(seed));
    for (double tol : {1e-5, 1e-7}) {
      const NormSpec spec = NormSpec::lp(1.0, 1.0, tol);
      const LpNormResult res = lp_norm(p, spec);
      REQUIRE(res.converged);
      // Doubling the final grid moves the value by at most 2 quad_tol.
      const double doubled = lp_norm_on_grid(p, spec, 2 * res.grid_size);
      CHECK(rel_diff(res.value, doubled) <= 2.0 * tol);
    }
    // And the refined value is close to a much tighter reference.
    const double coarse = lp_norm(p, NormSpec::lp(1.0, 1.0, 1e-6)).value;
    const double fine = lp_norm(p, NormSpec::lp(1.0, 1.0, 1e-12)).value;
    CHECK(rel_diff(coarse, fine) <= 5e-6);
  }
}

TEST_CASE("sup norm enclosures") {
  SUBCASE("constant-modulus extremal case") {
    for (int n : {1, 8, 64}) {
      const SupNormEnclosure enc = sup_norm(Polynomial::monomial(n), NormSpec::sup());
      CHECK(std::abs(enc.lower - 1.0) <= 1e-12);
      CHECK(enc.upper == enc.lower / (1.0 - enc.eps));
    }
  }

  SUBCASE("1 + z attains 2 at z = 1") {
    const SupNormEnclosure enc = sup_norm(poly({1.0, 1.0}), NormSpec::sup());
    CHECK(enc.contains(2.0));
    CHECK(enc.upper - enc.lower <= 0.011 * enc.lower);
  }

  SUBCASE("zero polynomial") {
    const SupNormEnclosure enc = sup_norm(Polynomial(), NormSpec::sup());
    CHECK(enc.lower == 0.0);
    CHECK(enc.upper == 0.0);
  }

  SUBCASE("soundness against a finer superset sampling") {
    for (int seed = 0; seed < 10; ++seed) {
      const Polynomial p = random_poly(64, 200 + seed);
      const SupNormEnclosure enc = sup_norm(p, NormSpec::sup(1.0, 0.05));
      // Independent oracle: a 12x finer superset grid, Horner evaluated.
      const int n_fine = static_cast<int>(enc.grid_size) * 12;
      double fine_max = 0.0;
      for (int j = 0; j < n_fine; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / n_fine;
        fine_max = std::max(fine_max, std::abs(evaluate(p, std::polar(1.0, angle))));
      }
      CHECK(enc.lower <= fine_max * (1.0 + 1e-11));
      CHECK(fine_max <= enc.upper * (1.0 + 1e-11));
    }
  }

  SUBCASE("radius reduction by dilation") {
    const Polynomial p = random_poly(16, 33);
    for (double r : {0.5, 2.0}) {
      const SupNormEnclosure enc = sup_norm(p, NormSpec::sup(r, 0.01));
      const int n_fine = static_cast<int>(enc.grid_size) * 4;
      double fine_max = 0.0;
      for (int j = 0; j < n_fine; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / n_fine;
        fine_max = std::max(fine_max, std::abs(evaluate(p, std::polar(r, angle))));
      }
      CHECK(enc.lower <= fine_max * (1.0 + 1e-11));
      CHECK(fine_max <= enc.upper * (1.0 + 1e-11));
    }
  }
}

TEST_CASE("Bernstein inequality, sound direction") {
  // lower(||P'||_{inf,r}) <= (n/r) upper(||P||_{inf,r}).
  for (int seed = 0; seed < 8; ++seed) {
    const Polynomial p = random_poly(32, 300 + seed);
    const Polynomial dp = derivative(p);
    for (double r : {0.5, 1.0, 2.0}) {
      const SupNormEnclosure np = sup_norm(p, NormSpec::sup(r));
      const SupNormEnclosure nd = sup_norm(dp, NormSpec::sup(r));
      CHECK(nd.lower <= (32.0 / r) * np.upper);
    }
  }
}

TEST_CASE("lp norm converges on hard quasinorm input") {
  // p < 1 with zeros near the circle: the refinement loop must either
  // converge or flag honestly, and the value must still beat a coarse
  // reference to a few digits.
  const Polynomial p = random_poly(96, 9);
  const LpNormResult res = lp_norm(p, NormSpec::lp(0.5, 1.0, 1e-7));
  CHECK(res.value > 0.0);
  if (!res.converged) {
    CHECK(res.grid_size == (std::size_t{1} << 22));
  }
}
