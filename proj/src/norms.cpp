#include "bmf/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bmf/statistics.hpp"

namespace bmf {

namespace {

constexpr std::size_t kQuadCap = std::size_t{1} << 22;

double max_coeff_abs(const Polynomial& p) {
  double m = 0.0;
  for (const Complex& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// Mean of |Q|^p over an N-point uniform unit-circle grid, times the grid
// maximum factored back in; robust for any p > 0 and any dynamic range.
double grid_lp_mean(const Polynomial& q, std::size_t n_points, double p) {
  const auto values = evaluate_on_grid(q, CircleGrid(1.0, static_cast<int>(n_points)));
  double vmax = 0.0;
  std::vector<double> mod(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    mod[j] = std::abs(values[j]);
    vmax = std::max(vmax, mod[j]);
  }
  if (vmax == 0.0) return 0.0;
  for (double& m : mod) m = std::pow(m / vmax, p);
  const double mean_pow = pairwise_sum(mod) / static_cast<double>(n_points);
  return vmax * std::pow(mean_pow, 1.0 / p);
}

}  // namespace

void NormSpec::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("NormSpec: p must be > 0");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("NormSpec: radius must be positive and finite");
  }
  if (!(quad_tol > 0.0)) throw std::invalid_argument("NormSpec: quad_tol must be > 0");
  if (!(sup_eps > 0.0 && sup_eps < 1.0)) {
    throw std::invalid_argument("NormSpec: sup_eps must lie in (0, 1)");
  }
}

double l2_norm(const Polynomial& p, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("l2_norm: radius must be positive and finite");
  }
  const auto& c = p.coeffs();
  const int n = p.formal_degree();
  std::vector<double> terms(c.size());
  if (radius <= 1.0) {
    double w = 1.0;  // radius^{2k}
    for (std::size_t k = 0; k < c.size(); ++k) {
      terms[k] = std::norm(c[k]) * w;
      w *= radius * radius;
    }
    return std::sqrt(pairwise_sum(terms));
  }
  // radius > 1: tilt by radius^{-2n} so every term is bounded by |A_k|^2;
  // the result overflows only if the true norm exceeds double range.
  double w = 1.0;  // radius^{2(k-n)} walking k downward from n
  for (std::size_t k = c.size(); k-- > 0;) {
    terms[k] = std::norm(c[k]) * w;
    w /= radius * radius;
  }
  return std::pow(radius, n) * std::sqrt(pairwise_sum(terms));
}

LpNormResult lp_norm(const Polynomial& p, const NormSpec& spec) {
  spec.validate();
  if (spec.is_sup()) throw std::invalid_argument("lp_norm: p must be finite; use sup_norm");
  if (p.is_zero()) return {0.0, true, 0};

  const Polynomial on_unit = spec.radius == 1.0 ? p : dilate(p, spec.radius);
  const double scale = max_coeff_abs(on_unit);
  if (scale == 0.0) return {0.0, true, 0};  // dilation underflowed to zero
  const Polynomial q = Complex{1.0 / scale, 0.0} * on_unit;

  const auto deg = static_cast<std::size_t>(p.formal_degree());
  std::size_t n_points = std::bit_ceil(std::max<std::size_t>(4 * (deg + 1), 256));
  double prev = grid_lp_mean(q, n_points, spec.p);
  int stable = 0;
  while (n_points < kQuadCap) {
    n_points *= 2;
    const double cur = grid_lp_mean(q, n_points, spec.p);
    const double ref = std::max({std::abs(cur), std::abs(prev), 1e-300});
    stable = std::abs(cur - prev) <= spec.quad_tol * ref ? stable + 1 : 0;
    prev = cur;
    if (stable >= 2) return {scale * cur, true, n_points};
  }
  return {scale * prev, false, n_points};
}

double lp_norm_on_grid(const Polynomial& p, const NormSpec& spec, std::size_t n_points) {
  spec.validate();
  if (spec.is_sup()) throw std::invalid_argument("lp_norm_on_grid: p must be finite");
  if (n_points == 0) throw std::invalid_argument("lp_norm_on_grid: n_points must be >= 1");
  if (p.is_zero()) return 0.0;
  const Polynomial on_unit = spec.radius == 1.0 ? p : dilate(p, spec.radius);
  const double scale = max_coeff_abs(on_unit);
  if (scale == 0.0) return 0.0;
  const Polynomial q = Complex{1.0 / scale, 0.0} * on_unit;
  return scale * grid_lp_mean(q, n_points, spec.p);
}

SupNormEnclosure sup_norm(const Polynomial& p, const NormSpec& spec) {
  spec.validate();
  if (!spec.is_sup()) throw std::invalid_argument("sup_norm: spec.p must be infinite");
  if (p.is_zero()) return {0.0, 0.0, spec.sup_eps};

  const Polynomial on_unit = spec.radius == 1.0 ? p : dilate(p, spec.radius);
  const double scale = max_coeff_abs(on_unit);
  if (scale == 0.0) return {0.0, 0.0, spec.sup_eps, 0};  // dilation underflowed to zero
  const Polynomial q = Complex{1.0 / scale, 0.0} * on_unit;

  // Angular spacing 2*pi/N <= eps/n puts a grid point within eps/n of the
  // maximizer (chord <= arc), which is what certifies the lower bound.
  const int n = std::max(p.formal_degree(), 1);
  const double needed = 2.0 * std::numbers::pi * static_cast<double>(n) / spec.sup_eps;
  if (needed > static_cast<double>(std::size_t{1} << 26)) {
    throw std::invalid_argument(
        "sup_norm: certification grid too large; increase sup_eps or reduce the degree");
  }
  const std::size_t n_points =
      std::bit_ceil(std::max<std::size_t>(static_cast<std::size_t>(std::ceil(needed)), 64));

  const auto values = evaluate_on_grid(q, CircleGrid(1.0, static_cast<int>(n_points)));
  double vmax = 0.0;
  for (const Complex& v : values) vmax = std::max(vmax, std::abs(v));

  SupNormEnclosure enc;
  enc.eps = spec.sup_eps;
  enc.grid_size = n_points;
  enc.lower = scale * vmax;
  enc.upper = enc.lower / (1.0 - spec.sup_eps);
  return enc;
}

}  // namespace bmf
