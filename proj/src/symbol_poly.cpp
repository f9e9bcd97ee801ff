#include "bjcalc/symbol_poly.hpp"

#include "expression_parser.hpp"

namespace bjcalc {

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      out.add_term({ma.r + mb.r, ma.s + mb.s}, ca * cb);
    }
  }
  return out;
}

PolySymbol& operator*=(PolySymbol& a, const PolySymbol& b) {
  a = a * b;
  return a;
}

namespace {

struct SymbolPolicy {
  using Value = PolySymbol;
  static Value scalar(const ExactScalar& c) { return PolySymbol::constant(c); }
  static Value x_power(unsigned k) { return PolySymbol::monomial(k, 0); }
  static Value p_power(unsigned k) { return PolySymbol::monomial(0, k); }
  static Value mul(const Value& a, const Value& b) { return a * b; }
};

}  // namespace

PolySymbol parse_symbol(std::string_view text) {
  return detail::ExpressionParser<SymbolPolicy>(text, 'x', 'p').parse();
}

std::string print_symbol(const PolySymbol& a) { return detail::format_terms(a.terms(), "x", "p"); }

}  // namespace bjcalc
