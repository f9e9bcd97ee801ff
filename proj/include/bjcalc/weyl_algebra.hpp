#pragma once

#include <string>
#include <string_view>

#include "bjcalc/parse_error.hpp"
#include "bjcalc/term_sum.hpp"

namespace bjcalc {

struct WeylTag {};

/// Element of the Weyl algebra C[x̂, p̂] with [x̂, p̂] = i hbar, stored in
/// normal order as a sum of c_rs x̂^r p̂^s (all x̂ to the left of all p̂).
using NormalOperator = TermSum<WeylTag>;

/// Product in the Weyl algebra, renormalized with
///   p̂^b x̂^c = sum_l C(b,l) C(c,l) l! (-i hbar)^l x̂^(c-l) p̂^(b-l).
NormalOperator operator*(const NormalOperator& a, const NormalOperator& b);
NormalOperator& operator*=(NormalOperator& a, const NormalOperator& b);

inline NormalOperator op_mul(const NormalOperator& a, const NormalOperator& b) { return a * b; }
NormalOperator commutator(const NormalOperator& a, const NormalOperator& b);

NormalOperator op_x(unsigned power = 1);
NormalOperator op_p(unsigned power = 1);

/// Parses a free operator expression over `X`, `P`, `i`, `hbar` and
/// rationals. Juxtaposition composes in the written order; the result is
/// normal ordered. Throws ParseError.
NormalOperator parse_operator(std::string_view text);

/// Renders with `X`, `P`; parse_operator(print_operator(A)) == A.
std::string print_operator(const NormalOperator& a);

}  // namespace bjcalc
