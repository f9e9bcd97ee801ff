#include "bjcalc/quantize.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bjcalc/series.hpp"

namespace bjcalc {

std::string_view to_string(Scheme scheme) { return scheme == Scheme::Weyl ? "weyl" : "bj"; }

namespace {

// Sum over l of (-i hbar)^l C(s,l) C(r,l) weight(l) x̂^(r-l) p̂^(s-l).
template <class Weight>
NormalOperator closed_monomial(unsigned r, unsigned s, Weight weight) {
  const ExactScalar minus_i_hbar = ExactScalar(GaussianRational(Rational(0), Rational(-1)), 1);
  NormalOperator out;
  ExactScalar hbar_power(1);
  for (unsigned l = 0; l <= std::min(r, s); ++l) {
    const Rational c = Rational(mpz_class(binomial(s, l) * binomial(r, l))) * weight(l);
    out.add_term({r - l, s - l}, hbar_power * ExactScalar(c));
    hbar_power *= minus_i_hbar;
  }
  return out;
}

NormalOperator checked(const NormalOperator& p_form, const NormalOperator& x_form, const char* name, unsigned r,
                       unsigned s) {
  if (p_form != x_form) {
    throw std::logic_error(std::string(name) + "(" + std::to_string(r) + "," + std::to_string(s) +
                           "): ordering forms disagree: " + print_operator(p_form) + " vs " + print_operator(x_form));
  }
  return p_form;
}

}  // namespace

NormalOperator op_w_monomial(unsigned r, unsigned s) {
  return closed_monomial(r, s, [](unsigned l) { return Rational(factorial(l), mpz_class(1) << l); });
}

NormalOperator op_bj_monomial(unsigned r, unsigned s) {
  return closed_monomial(r, s, [](unsigned l) { return Rational(factorial(l), mpz_class(l + 1)); });
}

NormalOperator op_monomial(unsigned r, unsigned s, Scheme scheme) {
  return scheme == Scheme::Weyl ? op_w_monomial(r, s) : op_bj_monomial(r, s);
}

NormalOperator op_w_average(unsigned r, unsigned s) {
  NormalOperator p_form;
  for (unsigned l = 0; l <= s; ++l) {
    p_form += (op_p(s - l) * op_x(r) * op_p(l)) * ExactScalar(Rational(binomial(s, l)));
  }
  p_form *= ExactScalar(Rational(mpz_class(1), mpz_class(1) << s));

  NormalOperator x_form;
  for (unsigned l = 0; l <= r; ++l) {
    x_form += (op_x(l) * op_p(s) * op_x(r - l)) * ExactScalar(Rational(binomial(r, l)));
  }
  x_form *= ExactScalar(Rational(mpz_class(1), mpz_class(1) << r));
  return checked(p_form, x_form, "op_w_average", r, s);
}

NormalOperator op_bj_average(unsigned r, unsigned s) {
  NormalOperator p_form;
  for (unsigned l = 0; l <= s; ++l) {
    p_form += op_p(s - l) * op_x(r) * op_p(l);
  }
  p_form *= ExactScalar(Rational(1, static_cast<long>(s) + 1));

  NormalOperator x_form;
  for (unsigned l = 0; l <= r; ++l) {
    x_form += op_x(l) * op_p(s) * op_x(r - l);
  }
  x_form *= ExactScalar(Rational(1, static_cast<long>(r) + 1));
  return checked(p_form, x_form, "op_bj_average", r, s);
}

NormalOperator quantize(const PolySymbol& a, Scheme scheme) {
  NormalOperator out;
  for (const auto& [m, c] : a.terms()) {
    out += op_monomial(m.r, m.s, scheme) * c;
  }
  return out;
}

PolySymbol dequantize(const NormalOperator& A, Scheme scheme) {
  // quantize(x^r p^s) = x̂^r p̂^s + terms of strictly lower total degree, so the
  // graded-leading term of the remainder always comes from a single monomial.
  PolySymbol symbol;
  NormalOperator remainder = A;
  while (!remainder.is_zero()) {
    const auto& [m, c] = *remainder.terms().begin();
    const Monomial lead = m;
    const ExactScalar coeff = c;
    symbol.add_term(lead, coeff);
    remainder -= op_monomial(lead.r, lead.s, scheme) * coeff;
  }
  return symbol;
}

namespace {

template <class Coefficient>
PolySymbol theta_series_map(const PolySymbol& a, Coefficient coefficient) {
  const ExactScalar quarter_hbar_sq(GaussianRational(Rational(1, 4)), 2);
  PolySymbol out;
  for (const auto& [m, c] : a.terms()) {
    ExactScalar scale(1);
    for (unsigned k = 0; 2 * k <= std::min(m.r, m.s); ++k) {
      const mpz_class falling = (factorial(m.r) / factorial(m.r - 2 * k)) * (factorial(m.s) / factorial(m.s - 2 * k));
      out.add_term({m.r - 2 * k, m.s - 2 * k}, c * scale * ExactScalar(coefficient(k) * Rational(falling)));
      scale *= quarter_hbar_sq;
    }
  }
  return out;
}

}  // namespace

PolySymbol bj_to_weyl_series(const PolySymbol& a) { return theta_series_map(a, theta_series_coeff); }

PolySymbol weyl_to_bj_series(const PolySymbol& b) { return theta_series_map(b, theta_inv_series_coeff); }

PolySymbol bj_to_weyl_poly(const PolySymbol& a) {
  PolySymbol series = bj_to_weyl_series(a);
  PolySymbol composite = dequantize(quantize(a, Scheme::BornJordan), Scheme::Weyl);
  if (series != composite) {
    throw std::logic_error("bj_to_weyl_poly: series " + print_symbol(series) + " disagrees with composite " +
                           print_symbol(composite));
  }
  return series;
}

PolySymbol weyl_to_bj_poly(const PolySymbol& b) {
  PolySymbol series = weyl_to_bj_series(b);
  PolySymbol composite = dequantize(quantize(b, Scheme::Weyl), Scheme::BornJordan);
  if (series != composite) {
    throw std::logic_error("weyl_to_bj_poly: series " + print_symbol(series) + " disagrees with composite " +
                           print_symbol(composite));
  }
  return series;
}

}  // namespace bjcalc
