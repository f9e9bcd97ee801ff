#pragma once

#include <complex>
#include <map>
#include <string>

#include "bjcalc/rational.hpp"

namespace bjcalc {

/// Complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  GaussianRational& operator+=(const GaussianRational& rhs);
  GaussianRational& operator-=(const GaussianRational& rhs);
  GaussianRational& operator*=(const GaussianRational& rhs);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  GaussianRational operator-() const { return {-re, -im}; }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// A Gaussian-rational Laurent polynomial in the symbolic Planck constant:
/// sum over integer exponents e of c_e * hbar^e. Zero coefficients are never
/// stored, so the representation of every value is unique.
class ExactScalar {
 public:
  using TermMap = std::map<int, GaussianRational>;

  ExactScalar() = default;
  ExactScalar(long value) : ExactScalar(GaussianRational(Rational(value))) {}  // NOLINT
  ExactScalar(Rational value) : ExactScalar(GaussianRational(std::move(value))) {}  // NOLINT
  ExactScalar(GaussianRational value, int hbar_exponent = 0);  // NOLINT

  static ExactScalar i() { return ExactScalar(GaussianRational::i()); }
  static ExactScalar hbar(int exponent = 1) { return ExactScalar(GaussianRational(Rational(1)), exponent); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  GaussianRational coefficient(int hbar_exponent) const;

  // Smallest and largest hbar exponent present; both 0 for the zero scalar.
  int min_hbar_degree() const;
  int max_hbar_degree() const;

  ExactScalar pow(unsigned exponent) const;
  std::complex<double> evaluate(double hbar) const;

  ExactScalar& operator+=(const ExactScalar& rhs);
  ExactScalar& operator-=(const ExactScalar& rhs);
  ExactScalar& operator*=(const ExactScalar& rhs);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  ExactScalar operator-() const;

  friend bool operator==(const ExactScalar&, const ExactScalar&) = default;

 private:
  void accumulate(int exponent, const GaussianRational& value);

  TermMap terms_;
};

}  // namespace bjcalc
