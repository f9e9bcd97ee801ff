#pragma once

#include <string_view>

#include "bjcalc/symbol_poly.hpp"
#include "bjcalc/weyl_algebra.hpp"

namespace bjcalc {

enum class Scheme { Weyl, BornJordan };

std::string_view to_string(Scheme scheme);

/// Closed monomial formulas:
///   Op_W(x^r p^s)  = sum_l (-i hbar)^l C(s,l) C(r,l) l!/2^l    x̂^(r-l) p̂^(s-l)
///   Op_BJ(x^r p^s) = sum_l (-i hbar)^l C(s,l) C(r,l) l!/(l+1) x̂^(r-l) p̂^(s-l)
NormalOperator op_w_monomial(unsigned r, unsigned s);
NormalOperator op_bj_monomial(unsigned r, unsigned s);
NormalOperator op_monomial(unsigned r, unsigned s, Scheme scheme);

/// Ordering averages, each evaluated in both of its equivalent forms (sum over
/// placements of x̂^r among p̂'s, and of p̂^s among x̂'s). Throws
/// std::logic_error if the two forms disagree.
NormalOperator op_w_average(unsigned r, unsigned s);
NormalOperator op_bj_average(unsigned r, unsigned s);

NormalOperator quantize(const PolySymbol& a, Scheme scheme);

/// Unique polynomial a with quantize(a, scheme) == A, found by eliminating
/// the leading normal-ordered term degree by degree.
PolySymbol dequantize(const NormalOperator& A, Scheme scheme);

/// Weyl symbol of Op_BJ(a): x^r p^s maps to
///   sum_k theta_k (hbar^2/4)^k r! s! / ((r-2k)! (s-2k)!) x^(r-2k) p^(s-2k)
/// with theta_k the sin(t)/t coefficients. Cross-checked against
/// dequantize(quantize(a, BornJordan), Weyl); throws std::logic_error on mismatch.
PolySymbol bj_to_weyl_poly(const PolySymbol& a);

/// Born-Jordan symbol of Op_W(b): same shape as bj_to_weyl_poly with the
/// t/sin(t) coefficients a_k. Cross-checked against
/// dequantize(quantize(b, Weyl), BornJordan).
PolySymbol weyl_to_bj_poly(const PolySymbol& b);

/// The series maps alone, without the composite cross-check.
PolySymbol bj_to_weyl_series(const PolySymbol& a);
PolySymbol weyl_to_bj_series(const PolySymbol& b);

}  // namespace bjcalc
