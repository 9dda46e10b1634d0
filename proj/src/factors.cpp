#include "bmf/factors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bmf {

namespace {

FactorSample l2_factor(const Polynomial& p, const NormSpec& spec) {
  L2TrajectoryState state(spec.radius);
  for (const Complex& c : p.coeffs()) state.advance(c);
  return {p.formal_degree(), state.m(), spec, std::nullopt};
}

FactorSample sup_factor(const Polynomial& p, const NormSpec& spec) {
  const SupNormEnclosure np = sup_norm(p, spec);
  const SupNormEnclosure nd = sup_norm(derivative(p), spec);
  FactorSample fs;
  fs.n = p.formal_degree();
  fs.norm = spec;
  if (nd.lower == 0.0) {  // constant polynomial
    fs.value = 0.0;
    fs.enclosure_bounds = {0.0, 0.0};
    return fs;
  }
  const double lower = nd.lower / np.upper;
  const double upper = nd.upper / np.lower;
  fs.value = 0.5 * (lower + upper);
  fs.enclosure_bounds = {lower, upper};
  return fs;
}

}  // namespace

FactorSample factor(const Polynomial& p, const NormSpec& spec) {
  spec.validate();
  if (p.is_zero()) {
    FactorSample fs{p.formal_degree(), 0.0, spec, std::nullopt};
    if (spec.is_sup()) fs.enclosure_bounds = {0.0, 0.0};
    return fs;
  }
  if (spec.is_sup()) return sup_factor(p, spec);
  if (spec.p == 2.0) return l2_factor(p, spec);

  const LpNormResult np = lp_norm(p, spec);
  const LpNormResult nd = lp_norm(derivative(p), spec);
  const double value = np.value > 0.0 ? nd.value / np.value : 0.0;
  return {p.formal_degree(), value, spec, std::nullopt};
}

L2TrajectoryState::L2TrajectoryState(double radius) : radius_(radius), tilted_(radius > 1.0) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("L2TrajectoryState: radius must be positive and finite");
  }
}

void L2TrajectoryState::advance(Complex coefficient) {
  ++n_;
  const int k = n_;
  const double a2 = std::norm(coefficient);
  const double kk = static_cast<double>(k) * static_cast<double>(k);
  if (!tilted_) {
    // s0 = sum |A_k|^2 r^{2k}, s1 = sum k^2 |A_k|^2 r^{2k-2}.
    if (k == 0) {
      s0_ += a2;
    } else {
      const double w_prev = rpow2k_;  // r^{2(k-1)}
      rpow2k_ *= radius_ * radius_;
      s0_ += a2 * rpow2k_;
      s1_ += kk * a2 * w_prev;
    }
  } else {
    // Tilted sums: multiply by r^{-2} per step so the stored values are
    // sum |A_k|^2 r^{2(k-n)} and sum k^2 |A_k|^2 r^{2(k-n)}.
    const double decay = 1.0 / (radius_ * radius_);
    s0_ = s0_ * decay + a2;
    s1_ = s1_ * decay + kk * a2;
  }
}

double L2TrajectoryState::m() const {
  if (!(s0_ > 0.0)) return 0.0;
  const double ratio = std::sqrt(s1_ / s0_);
  return tilted_ ? ratio / radius_ : ratio;
}

std::vector<int> geometric_degree_grid(int n_max) {
  if (n_max < 0) throw std::invalid_argument("geometric_degree_grid: n_max < 0");
  if (n_max <= 2) return {n_max};
  std::vector<int> grid;
  for (int v = 2; v < n_max; v *= 2) grid.push_back(v);
  grid.push_back(n_max);
  return grid;
}

std::vector<FactorSample> l2_factor_trajectory(const CoefficientTrajectory& traj, double radius,
                                               std::vector<int> n_values) {
  if (traj.values.empty()) throw std::invalid_argument("l2_factor_trajectory: empty trajectory");
  if (n_values.empty()) n_values = geometric_degree_grid(traj.n_max());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 0 || n_values[i] > traj.n_max()) {
      throw std::invalid_argument("l2_factor_trajectory: requested n outside trajectory");
    }
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("l2_factor_trajectory: n_values must be increasing");
    }
  }

  std::vector<FactorSample> out;
  out.reserve(n_values.size());
  L2TrajectoryState state(radius);
  std::size_t next = 0;
  const NormSpec spec = NormSpec::l2(radius);
  for (int k = 0; k <= traj.n_max() && next < n_values.size(); ++k) {
    state.advance(traj.values[static_cast<std::size_t>(k)]);
    if (k == n_values[next]) {
      out.push_back({k, state.m(), spec, std::nullopt});
      ++next;
    }
  }
  return out;
}

bool is_self_reciprocal(const Polynomial& p, double tol) {
  const auto& c = p.coeffs();
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(c[k] - std::conj(c[n - 1 - k])) > tol) return false;
  }
  return true;
}

ReciprocalPairResult reciprocal_pair_check(const Polynomial& p, double eps) {
  if (p.is_zero()) throw std::invalid_argument("reciprocal_pair_check: zero polynomial");
  if (p.formal_degree() < 1) {
    throw std::invalid_argument("reciprocal_pair_check: formal degree must be >= 1");
  }
  const NormSpec spec = NormSpec::sup(1.0, eps);
  ReciprocalPairResult res;
  res.p_factor = factor(p, spec);
  res.q_factor = factor(conjugate_reciprocal(p), spec);
  res.sum_lower = res.p_factor.enclosure_bounds->first + res.q_factor.enclosure_bounds->first;
  res.sum_upper = res.p_factor.enclosure_bounds->second + res.q_factor.enclosure_bounds->second;
  const double n = static_cast<double>(p.formal_degree());
  res.sum_upper_at_least_degree = res.sum_upper >= n;
  res.sum_lower_within_slack =
      res.sum_lower >= n * (1.0 - eps) * (1.0 - eps) * (1.0 - 1e-9);
  return res;
}

SelfReciprocalResult self_reciprocal_factor_check(const Polynomial& p, double eps) {
  if (p.is_zero()) throw std::invalid_argument("self_reciprocal_factor_check: zero polynomial");
  if (!is_self_reciprocal(p)) {
    throw std::invalid_argument("self_reciprocal_factor_check: polynomial is not self-reciprocal");
  }
  SelfReciprocalResult res;
  res.factor = factor(p, NormSpec::sup(1.0, eps));
  res.target = static_cast<double>(p.formal_degree()) / 2.0;
  const auto [lo, up] = *res.factor.enclosure_bounds;
  const double width = up - lo;
  res.contains_target = (lo - width <= res.target) && (res.target <= up + width);
  return res;
}

}  // namespace bmf
