#include "bmf/distributions.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "numeric_io.hpp"

namespace bmf {

DistributionSpec DistributionSpec::complex_gaussian() {
  return DistributionSpec(DistKind::complex_gaussian);
}

DistributionSpec DistributionSpec::real_gaussian() {
  return DistributionSpec(DistKind::real_gaussian);
}

DistributionSpec DistributionSpec::rademacher() {
  return DistributionSpec(DistKind::rademacher);
}

DistributionSpec DistributionSpec::uniform_symmetric(double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("uniform_symmetric: half width must be positive");
  }
  DistributionSpec spec(DistKind::uniform_symmetric);
  spec.half_width_ = half_width;
  return spec;
}

DistributionSpec DistributionSpec::custom_discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("custom_discrete: no atoms");
  double total = 0.0;
  double mass_at_zero = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.prob >= 0.0) || !std::isfinite(a.prob)) {
      throw std::invalid_argument("custom_discrete: probabilities must be nonnegative");
    }
    if (!std::isfinite(a.value.real()) || !std::isfinite(a.value.imag())) {
      throw std::invalid_argument("custom_discrete: atom values must be finite");
    }
    total += a.prob;
    if (std::abs(a.value) == 0.0) mass_at_zero += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("custom_discrete: probabilities must sum to 1 within 1e-12");
  }
  if (mass_at_zero >= 1.0 - 1e-12) {
    throw std::invalid_argument("custom_discrete: law is trivial (all mass at zero)");
  }
  DistributionSpec spec(DistKind::custom_discrete);
  spec.atoms_ = std::move(atoms);
  spec.cumulative_.reserve(spec.atoms_.size());
  double acc = 0.0;
  for (const Atom& a : spec.atoms_) {
    acc += a.prob;
    spec.cumulative_.push_back(acc);
  }
  spec.cumulative_.back() = 1.0;
  return spec;
}

bool DistributionSpec::is_real() const {
  switch (kind_) {
    case DistKind::complex_gaussian:
      return false;
    case DistKind::real_gaussian:
    case DistKind::rademacher:
    case DistKind::uniform_symmetric:
      return true;
    case DistKind::custom_discrete:
      for (const Atom& a : atoms_) {
        if (a.value.imag() != 0.0) return false;
      }
      return true;
  }
  return false;
}

std::complex<double> DistributionSpec::mean() const {
  if (kind_ != DistKind::custom_discrete) return {0.0, 0.0};
  std::complex<double> m{0.0, 0.0};
  for (const Atom& a : atoms_) m += a.prob * a.value;
  return m;
}

double DistributionSpec::second_moment() const {
  switch (kind_) {
    case DistKind::complex_gaussian:
    case DistKind::real_gaussian:
    case DistKind::rademacher:
      return 1.0;
    case DistKind::uniform_symmetric:
      return half_width_ * half_width_ / 3.0;
    case DistKind::custom_discrete: {
      double m2 = 0.0;
      for (const Atom& a : atoms_) m2 += a.prob * std::norm(a.value);
      return m2;
    }
  }
  return 0.0;
}

bool DistributionSpec::finite_second_moment() const {
  return declared_.finite_second_moment.value_or(true);
}

bool DistributionSpec::finite_abs_moment() const {
  return declared_.finite_abs_moment.value_or(true);
}

bool DistributionSpec::finite_log_moment() const {
  return declared_.finite_log_moment.value_or(true);
}

bool DistributionSpec::finite_all_moments() const {
  return declared_.finite_all_moments.value_or(true);
}

bool DistributionSpec::conjugation_invariant() const {
  if (is_real()) return true;
  if (kind_ == DistKind::complex_gaussian) return true;
  // custom_discrete with genuinely complex atoms: the atom set must be
  // closed under conjugation with matching mass.
  for (const Atom& a : atoms_) {
    double matched = 0.0;
    for (const Atom& b : atoms_) {
      if (std::abs(b.value - std::conj(a.value)) <= 1e-12) matched += b.prob;
    }
    double own = 0.0;
    for (const Atom& b : atoms_) {
      if (std::abs(b.value - a.value) <= 1e-12) own += b.prob;
    }
    if (std::abs(matched - own) > 1e-12) return false;
  }
  return true;
}

bool DistributionSpec::modulus_density_bounded_near_zero() const {
  switch (kind_) {
    case DistKind::complex_gaussian:   // Rayleigh: 2x exp(-x^2)
    case DistKind::real_gaussian:      // half-normal: sqrt(2/pi) exp(-x^2/2)
    case DistKind::uniform_symmetric:  // uniform on [0, a]: 1/a
      return true;
    case DistKind::rademacher:
    case DistKind::custom_discrete:
      return false;
  }
  return false;
}

bool DistributionSpec::modulus_sq_density_bounded_near_zero() const {
  // Only the complex Gaussian qualifies: |A|^2 ~ Exp(1). For the real
  // Gaussian |A|^2 is chi-square(1) and for uniform laws the density of A^2
  // behaves like x^{-1/2}; both are unbounded at 0.
  return kind_ == DistKind::complex_gaussian;
}

std::string DistributionSpec::name() const {
  switch (kind_) {
    case DistKind::complex_gaussian:
      return "complex_gaussian";
    case DistKind::real_gaussian:
      return "real_gaussian";
    case DistKind::rademacher:
      return "rademacher";
    case DistKind::uniform_symmetric:
      return "uniform_symmetric " + detail::format_double(half_width_);
    case DistKind::custom_discrete:
      return "custom_discrete";
  }
  return "unknown";
}

}  // namespace bmf
