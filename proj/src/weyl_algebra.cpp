#include "bjcalc/weyl_algebra.hpp"

#include <algorithm>

#include "expression_parser.hpp"

namespace bjcalc {

NormalOperator operator*(const NormalOperator& a, const NormalOperator& b) {
  const ExactScalar minus_i_hbar = ExactScalar(GaussianRational(Rational(0), Rational(-1)), 1);
  NormalOperator out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      // x̂^ma.r (p̂^ma.s x̂^mb.r) p̂^mb.s
      const ExactScalar base = ca * cb;
      ExactScalar hbar_power(1);
      const unsigned top = std::min(ma.s, mb.r);
      for (unsigned l = 0; l <= top; ++l) {
        const mpz_class weight = binomial(ma.s, l) * binomial(mb.r, l) * factorial(l);
        out.add_term({ma.r + mb.r - l, ma.s + mb.s - l}, base * hbar_power * ExactScalar(Rational(weight)));
        hbar_power *= minus_i_hbar;
      }
    }
  }
  return out;
}

NormalOperator& operator*=(NormalOperator& a, const NormalOperator& b) {
  a = a * b;
  return a;
}

NormalOperator commutator(const NormalOperator& a, const NormalOperator& b) { return a * b - b * a; }

NormalOperator op_x(unsigned power) { return NormalOperator::monomial(power, 0); }

NormalOperator op_p(unsigned power) { return NormalOperator::monomial(0, power); }

namespace {

struct OperatorPolicy {
  using Value = NormalOperator;
  static Value scalar(const ExactScalar& c) { return NormalOperator::constant(c); }
  static Value x_power(unsigned k) { return op_x(k); }
  static Value p_power(unsigned k) { return op_p(k); }
  static Value mul(const Value& a, const Value& b) { return a * b; }
};

}  // namespace

NormalOperator parse_operator(std::string_view text) {
  return detail::ExpressionParser<OperatorPolicy>(text, 'X', 'P').parse();
}

std::string print_operator(const NormalOperator& a) { return detail::format_terms(a.terms(), "X", "P"); }

}  // namespace bjcalc
