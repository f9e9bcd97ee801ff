#pragma once

#include <string>
#include <string_view>

#include "bjcalc/parse_error.hpp"
#include "bjcalc/term_sum.hpp"

namespace bjcalc {

struct CommutingTag {};

/// Classical polynomial symbol a(x, p) in one degree of freedom, with
/// ExactScalar coefficients. Commutative: x^r p^s == p^s x^r.
using PolySymbol = TermSum<CommutingTag>;

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b);
PolySymbol& operator*=(PolySymbol& a, const PolySymbol& b);

/// Parses the symbol grammar (variables `x`, `p`). Throws ParseError.
PolySymbol parse_symbol(std::string_view text);

/// Graded-lexicographic descending rendering; parse_symbol(print_symbol(a)) == a.
std::string print_symbol(const PolySymbol& a);

}  // namespace bjcalc
