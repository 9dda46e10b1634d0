#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace bmf {

enum class DistKind {
  complex_gaussian,   // density (1/pi) exp(-|z|^2); Re, Im ~ N(0, 1/2) independent
  real_gaussian,      // N(0, 1)
  rademacher,         // uniform on {-1, +1}
  uniform_symmetric,  // uniform on the real interval [-a, a]
  custom_discrete,    // user-supplied atoms
};

struct Atom {
  std::complex<double> value;
  double prob;
};

/// Optional overrides of the moment capabilities derived from the kind.
/// All built-in kinds have every moment finite; the overrides exist so a
/// config can declare a law as if it were heavy-tailed and exercise the
/// hypothesis-refusal paths.
struct DeclaredMoments {
  std::optional<bool> finite_second_moment;  // E|A|^2 < inf
  std::optional<bool> finite_abs_moment;     // E|A|   < inf
  std::optional<bool> finite_log_moment;     // E log+|A| < inf
  std::optional<bool> finite_all_moments;    // E|A|^q < inf for all q
};

/// Declarative description of the i.i.d. coefficient law. Immutable; the
/// capability queries drive per-theorem hypothesis enforcement in the
/// experiment runners.
class DistributionSpec {
 public:
  static DistributionSpec complex_gaussian();
  static DistributionSpec real_gaussian();
  static DistributionSpec rademacher();
  /// Throws if a <= 0 (a == 0 would put all mass at zero).
  static DistributionSpec uniform_symmetric(double half_width);
  /// Throws if probabilities are negative, do not sum to 1 within 1e-12,
  /// or the law is trivial (all mass at zero).
  static DistributionSpec custom_discrete(std::vector<Atom> atoms);

  DistKind kind() const { return kind_; }
  double half_width() const { return half_width_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  DeclaredMoments& declared() { return declared_; }
  const DeclaredMoments& declared() const { return declared_; }

  bool is_real() const;
  bool is_complex_gaussian() const { return kind_ == DistKind::complex_gaussian; }
  std::complex<double> mean() const;
  double second_moment() const;  // E|A|^2

  bool finite_second_moment() const;
  bool finite_abs_moment() const;
  bool finite_log_moment() const;
  /// E|A|^q < inf for every q; stands in for the p-dependent 2p-th moment.
  bool finite_all_moments() const;

  /// Law invariant under complex conjugation (true for every real law).
  bool conjugation_invariant() const;
  /// |A| absolutely continuous with bounded density on some [0, eps].
  bool modulus_density_bounded_near_zero() const;
  /// |A|^2 absolutely continuous with bounded density on some [0, eps].
  /// Note real Gaussian fails this: the chi-square(1) density blows up at 0.
  bool modulus_sq_density_bounded_near_zero() const;

  std::string name() const;

 private:
  explicit DistributionSpec(DistKind kind) : kind_(kind) {}

  DistKind kind_;
  double half_width_ = 0.0;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;  // inverse-CDF table for custom_discrete
  DeclaredMoments declared_;

  friend std::complex<double> sample_coefficient(const DistributionSpec&, std::uint64_t,
                                                 std::uint64_t, std::uint64_t);
};

}  // namespace bmf
