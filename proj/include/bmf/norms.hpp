#pragma once

#include <cstddef>
#include <limits>

#include "bmf/polynomial.hpp"

namespace bmf {

/// Norm identifier: exponent p in (0, inf] (inf encodes the sup norm) and
/// circle radius r > 0, plus the accuracy knobs for the two approximate
/// norm families.
struct NormSpec {
  double p = 2.0;
  double radius = 1.0;
  double quad_tol = 1e-9;  // relative tolerance for quadrature refinement
  double sup_eps = 0.01;   // certification-grid epsilon for the sup norm

  static NormSpec l2(double radius = 1.0) { return {2.0, radius, 1e-9, 0.01}; }
  static NormSpec lp(double p, double radius = 1.0, double quad_tol = 1e-9) {
    return {p, radius, quad_tol, 0.01};
  }
  static NormSpec sup(double radius = 1.0, double eps = 0.01) {
    return {std::numeric_limits<double>::infinity(), radius, 1e-9, eps};
  }

  bool is_sup() const { return std::isinf(p); }

  /// Throws std::invalid_argument on p <= 0, radius <= 0, quad_tol <= 0 or
  /// sup_eps outside (0, 1).
  void validate() const;
};

/// Certified two-sided bound on a sup norm: lower is an exact grid maximum
/// and upper = lower / (1 - eps), where the grid is fine enough (angular
/// spacing <= eps/n) that some grid point lies within eps/n of the
/// maximizer. Soundness: lower <= true sup norm <= upper.
struct SupNormEnclosure {
  double lower = 0.0;
  double upper = 0.0;
  double eps = 0.0;
  std::size_t grid_size = 0;  // certification grid actually used

  bool contains(double x) const { return lower <= x && x <= upper; }
};

struct LpNormResult {
  double value = 0.0;
  bool converged = true;    // false when the grid cap was hit first
  std::size_t grid_size = 0;
};

/// (sum_k |A_k|^2 r^{2k})^{1/2}, computed from the coefficients; exact up
/// to rounding. Internally rescaled so that intermediate sums cannot
/// overflow unless the norm itself does.
double l2_norm(const Polynomial& p, double radius);

/// ((1/2pi) Int |P(r e^{it})|^p dt)^{1/p} for finite p > 0, by the
/// rectangle rule on uniform circle grids (exact-weight rule for periodic
/// integrands). The grid starts at max(4*(formal_degree+1), 256), rounded
/// up to a power of two, and doubles until the relative change is below
/// spec.quad_tol on two consecutive refinements (a single small change can
/// be an aliasing coincidence when p < 2 puts near-kinks in |P|^p) or the
/// 2^22-point cap is reached; hitting the cap is reported via
/// converged = false, the value is still returned.
LpNormResult lp_norm(const Polynomial& p, const NormSpec& spec);

/// Single fixed-grid rectangle-rule evaluation of the same integral; the
/// refinement loop above is built on this. Exposed for convergence
/// diagnostics.
double lp_norm_on_grid(const Polynomial& p, const NormSpec& spec, std::size_t n_points);

/// Certified sup-norm enclosure. A radius other than 1 is first removed by
/// dilation so the unit-circle grid argument applies verbatim. The grid
/// spacing uses n = max(formal_degree, 1); the zero polynomial yields
/// [0, 0].
SupNormEnclosure sup_norm(const Polynomial& p, const NormSpec& spec);

}  // namespace bmf
