#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bmf/norms.hpp"
#include "bmf/polynomial.hpp"
#include "bmf/sampling.hpp"

namespace bmf {

/// One Bernstein-Markov factor M_n = ||P'|| / ||P||. The zero polynomial
/// (and hence any constant) has factor 0 by convention. For sup norms the
/// value is the midpoint of the certified ratio enclosure and
/// enclosure_bounds carries (lower(||P'||)/upper(||P||),
/// upper(||P'||)/lower(||P||)); theorem checks must use the sound side.
struct FactorSample {
  int n = 0;
  double value = 0.0;
  NormSpec norm;
  std::optional<std::pair<double, double>> enclosure_bounds;
};

FactorSample factor(const Polynomial& p, const NormSpec& spec);

/// Running prefix sums behind the exact L2 factor on the radius-r circle:
/// M_n^2 = sum_{1<=k<=n} k^2 |A_k|^2 r^{2k-2} / sum_{k<=n} |A_k|^2 r^{2k}.
/// For r <= 1, s0 and s1 are those literal sums and M_n = sqrt(s1/s0). For
/// r > 1 the literal sums overflow at large n, so both are tilted by
/// r^{-2n} at every step (each advance multiplies by r^{-2} and adds the
/// new term, with s1 carrying weight r^{2(k-n)}) and M_n = sqrt(s1/s0)/r.
class L2TrajectoryState {
 public:
  explicit L2TrajectoryState(double radius);

  /// Appends coefficient A_{n+1} to the prefix.
  void advance(Complex coefficient);

  int n() const { return n_; }
  double radius() const { return radius_; }
  /// Current M_n; 0 while the prefix is all zeros.
  double m() const;

  double s0() const { return s0_; }
  double s1() const { return s1_; }

 private:
  double radius_;
  bool tilted_;     // true iff radius > 1
  double s0_ = 0.0; // sum |A_k|^2 w_k
  double s1_ = 0.0; // sum k^2 |A_k|^2 w_k  (note: same weight; m() divides by r)
  int n_ = -1;
  double rpow2k_ = 1.0;  // r^{2n} for the r <= 1 branch
};

/// M_n for each requested n, all on the same nested coefficient stream,
/// via O(1) incremental updates. An empty n_values selects the default
/// geometric grid {2, 4, 8, ...} plus the endpoint. An all-zero prefix is
/// reported as M_n = 0, not an error.
std::vector<FactorSample> l2_factor_trajectory(const CoefficientTrajectory& traj, double radius,
                                               std::vector<int> n_values = {});

/// {2, 4, 8, ..., n_max} (n_max appended when not already a power of two).
std::vector<int> geometric_degree_grid(int n_max);

/// Certified sup-norm factor bounds for p and its conjugate reciprocal q.
/// The true factors satisfy M(p) + M(q) >= n, so the certified upper sum
/// must be >= n in every realization and the certified lower sum can lag by
/// at most the (1-eps)^2 enclosure slack.
struct ReciprocalPairResult {
  FactorSample p_factor;
  FactorSample q_factor;
  double sum_lower = 0.0;
  double sum_upper = 0.0;
  bool sum_upper_at_least_degree = false;
  bool sum_lower_within_slack = false;  // sum_lower >= n (1-eps)^2 - fp slack
};

/// Throws std::invalid_argument on the zero polynomial or formal degree 0.
ReciprocalPairResult reciprocal_pair_check(const Polynomial& p, double eps);

/// True iff p equals its conjugate reciprocal coefficient-wise within tol.
bool is_self_reciprocal(const Polynomial& p, double tol = 1e-12);

/// For self-reciprocal p the sup-norm factor equals exactly n/2; returns
/// the enclosure and whether it contains that target (with a one-width
/// inflation against rounding). Rejects non-self-reciprocal input.
struct SelfReciprocalResult {
  FactorSample factor;
  double target = 0.0;
  bool contains_target = false;
};

SelfReciprocalResult self_reciprocal_factor_check(const Polynomial& p, double eps);

}  // namespace bmf
