#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace bmf {

using Complex = std::complex<double>;

/// Dense polynomial P(z) = sum_k coeffs[k] z^k.
///
/// The formal degree is coeffs().size() - 1 and is authoritative even when
/// the leading coefficient happens to be zero: random ensembles are indexed
/// by the number of sampled coefficients, not by the realized degree.
/// The all-zero coefficient vector is a valid value (the zero polynomial).
class Polynomial {
 public:
  /// Zero polynomial of formal degree 0.
  Polynomial() : coeffs_(1, Complex{0.0, 0.0}) {}

  /// Throws std::invalid_argument if `coeffs` is empty or contains a
  /// non-finite entry.
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, Complex c = Complex{1.0, 0.0});

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int formal_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

  /// True iff every coefficient is exactly zero.
  bool is_zero() const;

 private:
  std::vector<Complex> coeffs_;
};

/// Uniform grid of `size` points on the circle of radius `radius`:
/// point(j) = radius * exp(2*pi*i*j / size). Every point is generated from
/// the angle formula directly, never by repeated multiplication, so the
/// grid keeps the exact root-of-unity structure at any size.
class CircleGrid {
 public:
  CircleGrid(double radius, int size);

  double radius() const { return radius_; }
  int size() const { return size_; }
  Complex point(int j) const;
  std::vector<Complex> points() const;

 private:
  double radius_;
  int size_;
};

/// d/dz. The derivative of a constant is the zero polynomial of formal
/// degree 0; otherwise the formal degree drops by exactly one.
Polynomial derivative(const Polynomial& p);

/// Horner evaluation of P(z). This is the reference semantics for every
/// other evaluation path.
Complex evaluate(const Polynomial& p, Complex z);

/// P at every grid point, in grid order. Uses a radix-2 FFT of the
/// radius-dilated, zero-padded coefficients when the grid size is a power
/// of two at least formal_degree+1; falls back to per-point Horner
/// otherwise. Both paths agree to roundoff by construction.
std::vector<Complex> evaluate_on_grid(const Polynomial& p, const CircleGrid& grid);

/// Per-point Horner evaluation on the grid (the reference path).
std::vector<Complex> evaluate_on_grid_pointwise(const Polynomial& p, const CircleGrid& grid);

/// Change of variable z -> r z: returns sum_k A_k r^k z^k, so evaluating
/// the result on the unit circle equals evaluating p on the radius-r circle.
Polynomial dilate(const Polynomial& p, double r);

/// q(z) = z^n conj(p(1/conj(z))): coefficients are the conjugated reverse
/// of p's. |q| = |p| on the unit circle.
Polynomial conjugate_reciprocal(const Polynomial& p);

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Complex c, const Polynomial& p);

/// Convolution product. Quadratic; intended for test-scale degrees.
Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// Text format: one coefficient per line as "re im", full precision.
void write_coefficients(std::ostream& out, const Polynomial& p);

/// Reads the "re im" line format; accepts scientific notation. Throws
/// std::runtime_error on malformed input or an empty stream.
Polynomial read_coefficients(std::istream& in);

}  // namespace bmf
