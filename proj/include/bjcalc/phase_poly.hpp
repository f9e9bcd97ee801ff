#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "bjcalc/theta.hpp"

namespace bjcalc {

using Complex = std::complex<double>;

/// Exponents over the 2n phase-space coordinates, ordered (x_1..x_n, p_1..p_n).
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& alpha);
double multi_factorial(const MultiIndex& alpha);

/// All multi-indices over `vars` variables with total degree <= max_degree,
/// highest degree first.
std::vector<MultiIndex> multi_indices_up_to(unsigned vars, unsigned max_degree);

/// Polynomial in the 2n phase-space coordinates with complex coefficients.
class PhasePolynomial {
 public:
  using CoeffMap = std::map<MultiIndex, Complex>;

  explicit PhasePolynomial(unsigned n = 1) : n_(n) {}

  static PhasePolynomial constant(unsigned n, Complex value);
  /// The coordinate z_index, index in [0, 2n).
  static PhasePolynomial coordinate(unsigned n, unsigned index);

  unsigned dim() const { return n_; }
  unsigned vars() const { return 2 * n_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const;
  Complex coefficient(const MultiIndex& alpha) const;

  // Exact zeros are not stored.
  void add_term(const MultiIndex& alpha, Complex value);

  PhasePolynomial& operator+=(const PhasePolynomial& rhs);
  PhasePolynomial& operator-=(const PhasePolynomial& rhs);
  PhasePolynomial& operator*=(Complex scalar);
  friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
  friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
  friend PhasePolynomial operator*(PhasePolynomial a, Complex s) { return a *= s; }
  friend PhasePolynomial operator*(Complex s, PhasePolynomial a) { return a *= s; }
  friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b);

  /// Product with all terms of total degree > max_degree dropped.
  PhasePolynomial truncated_product(const PhasePolynomial& rhs, unsigned max_degree) const;

  Complex evaluate(const PhasePoint& z) const;

  /// Largest coefficient modulus; 0 for the zero polynomial.
  double max_abs_coeff() const;

 private:
  void require_same_dim(const PhasePolynomial& rhs) const;

  unsigned n_;
  CoeffMap coeffs_;
};

/// Fixed-point rendering with `precision` decimals, trailing zeros removed,
/// and "-0" printed as "0".
std::string format_real(double value, int precision);

/// Renders in graded descending order with variables x, p (n = 1) or
/// x1..xn, p1..pn. Coefficients are printed as real, imaginary ("c i") or
/// "(a + b i)".
std::string format_phase_polynomial(const PhasePolynomial& poly, int precision);

}  // namespace bjcalc
