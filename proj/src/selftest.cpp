#include "bmf/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bmf/config.hpp"
#include "bmf/factors.hpp"
#include "bmf/norms.hpp"
#include "bmf/polynomial.hpp"
#include "bmf/sampling.hpp"

namespace bmf {

namespace {

struct Runner {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, bool ok) {
    out << (ok ? "  ok   " : "  FAIL ") << name << "\n";
    if (!ok) ++failures;
  }

  void close(const std::string& name, double got, double want, double tol) {
    const bool ok = std::isfinite(got) && std::abs(got - want) <= tol;
    out << (ok ? "  ok   " : "  FAIL ") << name;
    if (!ok) out << " (got " << got << ", want " << want << ")";
    out << "\n";
    if (!ok) ++failures;
  }
};

Polynomial poly(std::initializer_list<Complex> coeffs) {
  return Polynomial(std::vector<Complex>(coeffs));
}

}  // namespace

int run_selftest(std::ostream& out) {
  Runner r{out};
  const Complex i{0.0, 1.0};

  out << "polynomial core\n";
  {
    const Polynomial p = poly({1.0, 1.0, 1.0});
    const Polynomial d = derivative(p);
    r.check("derivative of 1+z+z^2 is 1+2z",
            d.formal_degree() == 1 && d.coeff(0) == Complex{1.0, 0.0} &&
                d.coeff(1) == Complex{2.0, 0.0});
    r.check("derivative of a constant is the zero polynomial",
            derivative(Polynomial::constant(5.0)).is_zero());
    r.close("evaluate(1+z, 1) = 2", std::abs(evaluate(poly({1.0, 1.0}), 1.0) - 2.0), 0.0, 1e-15);
    r.close("evaluate at 0 returns the constant term",
            std::abs(evaluate(p, 0.0) - Complex{1.0, 0.0}), 0.0, 0.0);
    const auto vals = evaluate_on_grid(poly({0.0, 1.0}), CircleGrid(1.0, 4));
    r.close("z on the 4-point unit grid hits 1, i, -1, -i",
            std::abs(vals[0] - 1.0) + std::abs(vals[1] - i) + std::abs(vals[2] + 1.0) +
                std::abs(vals[3] + i),
            0.0, 1e-14);
    const Polynomial dil = dilate(poly({0.0, 0.0, 1.0}), 0.5);
    r.close("dilate(z^2, 1/2) = z^2/4", std::abs(dil.coeff(2) - 0.25), 0.0, 0.0);
    const Polynomial cr = conjugate_reciprocal(poly({1.0, 2.0}));
    r.check("conjugate reciprocal of 1+2z is 2+z",
            cr.coeff(0) == Complex{2.0, 0.0} && cr.coeff(1) == Complex{1.0, 0.0});
    r.check("conjugate reciprocal is an involution",
            conjugate_reciprocal(cr).coeffs() == poly({1.0, 2.0}).coeffs());
  }

  out << "norms\n";
  {
    r.close("||1+z||_2 = sqrt(2)", l2_norm(poly({1.0, 1.0}), 1.0), std::numbers::sqrt2, 1e-14);
    r.close("||z^8||_{2,r} = r^8", l2_norm(Polynomial::monomial(8), 0.5), std::pow(0.5, 8),
            1e-16);
    r.close("||c||_p = |c|", lp_norm(Polynomial::constant({3.0, 4.0}), NormSpec::lp(1.5)).value,
            5.0, 1e-9);
    r.close("||1+z||_4 = 6^(1/4)", lp_norm(poly({1.0, 1.0}), NormSpec::lp(4.0)).value,
            std::pow(6.0, 0.25), 1e-9);
    const SupNormEnclosure mono = sup_norm(Polynomial::monomial(16), NormSpec::sup());
    r.check("sup enclosure of z^16 is [1, 1/(1-eps)]",
            std::abs(mono.lower - 1.0) <= 1e-12 && mono.upper == mono.lower / (1.0 - mono.eps));
    r.check("sup enclosure of 1+z contains 2",
            sup_norm(poly({1.0, 1.0}), NormSpec::sup()).contains(2.0));
  }

  out << "factors\n";
  {
    r.close("factor of a constant is 0", factor(Polynomial::constant(7.0), NormSpec::l2()).value,
            0.0, 0.0);
    r.close("L2 factor of 1+z+z^2 is sqrt(5/3)", factor(poly({1.0, 1.0, 1.0}), NormSpec::l2()).value,
            std::sqrt(5.0 / 3.0), 1e-14);
    const FactorSample zn = factor(Polynomial::monomial(5), NormSpec::sup());
    r.check("sup factor enclosure of z^5 contains 5",
            zn.enclosure_bounds->first <= 5.0 && 5.0 <= zn.enclosure_bounds->second);
    const auto traj = CoefficientTrajectory::from_values({1.0, 1.0, 1.0});
    const auto samples = l2_factor_trajectory(traj, 1.0, {1, 2});
    r.close("constant stream: M_1 = 1/sqrt(2)", samples[0].value, 1.0 / std::numbers::sqrt2,
            1e-15);
    r.close("constant stream: M_2 = sqrt(5/3)", samples[1].value, std::sqrt(5.0 / 3.0), 1e-15);
    const ReciprocalPairResult pair = reciprocal_pair_check(poly({1.0, 1.0}), 0.01);
    r.check("pair sum for 1+z certifies >= 1", pair.sum_upper_at_least_degree);
    const ReciprocalPairResult extremal = reciprocal_pair_check(Polynomial::monomial(9), 0.01);
    r.check("pair sum for z^9 certifies >= 9", extremal.sum_upper_at_least_degree);
    const SelfReciprocalResult self = self_reciprocal_factor_check(poly({1.0, 0.0, 1.0}), 0.01);
    r.check("self-reciprocal 1+z^2 factor encloses n/2 = 1", self.contains_target);
  }

  out << "sampling\n";
  {
    const DistributionSpec rad = DistributionSpec::rademacher();
    const Polynomial sample = sample_coefficients(rad, 100, 7, 0);
    bool support_ok = true;
    for (const Complex& c : sample.coeffs()) {
      support_ok = support_ok && (c == Complex{1.0, 0.0} || c == Complex{-1.0, 0.0});
    }
    r.check("rademacher samples lie in {-1, +1}", support_ok);
    r.check("sampling is deterministic in (spec, seed, stream, n)",
            sample_coefficients(rad, 100, 7, 0).coeffs() == sample.coeffs());
    const auto long_traj = sample_trajectory(DistributionSpec::complex_gaussian(), 50, 11, 3);
    const auto short_traj = sample_trajectory(DistributionSpec::complex_gaussian(), 10, 11, 3);
    bool prefix_ok = true;
    for (int k = 0; k <= 10; ++k) {
      prefix_ok = prefix_ok && long_traj.values[static_cast<std::size_t>(k)] ==
                                   short_traj.values[static_cast<std::size_t>(k)];
    }
    r.check("trajectories are nested prefixes", prefix_ok);
  }

  out << "identities\n";
  {
    // Summation-by-parts form of the superunit-radius factor on one sample.
    const Polynomial p = sample_coefficients(DistributionSpec::complex_gaussian(), 64, 5, 0);
    const double radius = 2.0;
    std::vector<double> tilted(p.coeffs().size());
    double w = 1.0;
    for (std::size_t k = tilted.size(); k-- > 0;) {
      tilted[k] = std::norm(p.coeff(static_cast<int>(k))) * w;
      w /= radius * radius;
    }
    double s0 = 0.0, s1 = 0.0, abel = 0.0;
    for (std::size_t k = 0; k < tilted.size(); ++k) {
      s0 += tilted[k];
      s1 += static_cast<double>(k) * static_cast<double>(k) * tilted[k];
      if (k >= 1 && k + 1 < tilted.size()) abel += (2.0 * static_cast<double>(k) + 1.0) * s0;
    }
    const double nn = 64.0 * 64.0;
    r.close("summation-by-parts identity residual", std::abs(s1 / (nn * s0) -
             (1.0 - tilted[0] / (nn * s0) - abel / (nn * s0))), 0.0, 1e-12);
    r.close("Gamma(2)^(1/2) = 1", std::sqrt(std::tgamma(2.0)), 1.0, 1e-15);
    r.close("Gamma(3)^(1/4) = 2^(1/4)", std::pow(std::tgamma(3.0), 0.25), std::pow(2.0, 0.25),
            1e-15);
  }

  out << "config\n";
  {
    const std::string text =
        "[t1]\ntheorem = T1\ndist = complex_gaussian\ndegrees = 100\ntrials = 1\nseed = 7\n";
    bool parsed_ok = false;
    try {
      const auto configs = parse_config_text(text);
      parsed_ok = configs.size() == 1 && configs[0].norm.p == 2.0 && configs[0].norm.radius == 1.0;
    } catch (const std::exception&) {
    }
    r.check("minimal T1 config parses with defaults", parsed_ok);
    bool rejected = false;
    try {
      parse_config_text("[t3]\ntheorem = T3\ndist = rademacher\ndegrees = 100\n");
    } catch (const ConfigError&) {
      rejected = true;
    }
    r.check("T3 with rademacher is rejected as a hypothesis violation", rejected);
  }

  out << (r.failures == 0 ? "selftest: all checks passed\n"
                          : "selftest: " + std::to_string(r.failures) + " check(s) FAILED\n");
  return r.failures;
}

}  // namespace bmf
