#include "bmf/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "numeric_io.hpp"

namespace bmf {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("Polynomial: coefficient vector must be nonempty");
  }
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("Polynomial: coefficients must be finite");
    }
  }
}

Polynomial Polynomial::monomial(int degree, Complex c) {
  if (degree < 0) throw std::invalid_argument("Polynomial::monomial: degree < 0");
  std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1, Complex{0.0, 0.0});
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c == Complex{0.0, 0.0}; });
}

CircleGrid::CircleGrid(double radius, int size) : radius_(radius), size_(size) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("CircleGrid: radius must be positive and finite");
  }
  if (size < 1) throw std::invalid_argument("CircleGrid: size must be >= 1");
}

Complex CircleGrid::point(int j) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(size_);
  return std::polar(radius_, angle);
}

std::vector<Complex> CircleGrid::points() const {
  std::vector<Complex> pts(static_cast<std::size_t>(size_));
  for (int j = 0; j < size_; ++j) pts[static_cast<std::size_t>(j)] = point(j);
  return pts;
}

Polynomial derivative(const Polynomial& p) {
  const int n = p.formal_degree();
  if (n == 0) return Polynomial();
  std::vector<Complex> d(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    d[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * p.coeff(k);
  }
  return Polynomial(std::move(d));
}

Complex evaluate(const Polynomial& p, Complex z) {
  const auto& c = p.coeffs();
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * z + c[k];
  }
  return acc;
}

std::vector<Complex> evaluate_on_grid_pointwise(const Polynomial& p, const CircleGrid& grid) {
  std::vector<Complex> values(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) {
    values[static_cast<std::size_t>(j)] = evaluate(p, grid.point(j));
  }
  return values;
}

std::vector<Complex> evaluate_on_grid(const Polynomial& p, const CircleGrid& grid) {
  const auto n = static_cast<std::size_t>(grid.size());
  if (std::has_single_bit(n) && grid.size() >= p.formal_degree() + 1) {
    std::vector<Complex> data(n, Complex{0.0, 0.0});
    if (grid.radius() == 1.0) {
      std::copy(p.coeffs().begin(), p.coeffs().end(), data.begin());
    } else {
      const Polynomial d = dilate(p, grid.radius());
      std::copy(d.coeffs().begin(), d.coeffs().end(), data.begin());
    }
    detail::fft_pow2(data);
    return data;
  }
  return evaluate_on_grid_pointwise(p, grid);
}

Polynomial dilate(const Polynomial& p, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("dilate: r must be positive and finite");
  }
  std::vector<Complex> c = p.coeffs();
  double rk = 1.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    rk *= r;
    c[k] *= rk;
  }
  return Polynomial(std::move(c));
}

Polynomial conjugate_reciprocal(const Polynomial& p) {
  const auto& c = p.coeffs();
  std::vector<Complex> q(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    q[k] = std::conj(c[c.size() - 1 - k]);
  }
  return Polynomial(std::move(q));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const auto& small = a.coeffs().size() <= b.coeffs().size() ? a.coeffs() : b.coeffs();
  std::vector<Complex> c = a.coeffs().size() <= b.coeffs().size() ? b.coeffs() : a.coeffs();
  for (std::size_t k = 0; k < small.size(); ++k) c[k] += small[k];
  return Polynomial(std::move(c));
}

Polynomial operator*(Complex c, const Polynomial& p) {
  std::vector<Complex> out = p.coeffs();
  for (Complex& x : out) x *= c;
  return Polynomial(std::move(out));
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<Complex> out(ca.size() + cb.size() - 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) {
      out[i + j] += ca[i] * cb[j];
    }
  }
  return Polynomial(std::move(out));
}

void write_coefficients(std::ostream& out, const Polynomial& p) {
  for (const Complex& c : p.coeffs()) {
    out << detail::format_double(c.real()) << ' ' << detail::format_double(c.imag()) << '\n';
  }
}

Polynomial read_coefficients(std::istream& in) {
  std::vector<Complex> coeffs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(ls >> re >> im) || (ls >> extra)) {
      throw std::runtime_error("read_coefficients: line " + std::to_string(lineno) +
                               ": expected exactly two numbers");
    }
    coeffs.emplace_back(re, im);
  }
  if (coeffs.empty()) {
    throw std::runtime_error("read_coefficients: no coefficients found");
  }
  return Polynomial(std::move(coeffs));
}

}  // namespace bmf
