#pragma once

#include "bjcalc/rational.hpp"

namespace bjcalc {

/// Bernoulli number B_m, with the convention B_1 = -1/2.
Rational bernoulli(unsigned m);

/// Coefficient of t^(2k) in the Maclaurin expansion of sin(t)/t, i.e. (-1)^k/(2k+1)!.
Rational theta_series_coeff(unsigned k);

/// Coefficient of t^(2k) in the Maclaurin expansion of t/sin(t):
///   a_k = (-1)^(k-1) (2^(2k) - 2) B_(2k) / (2k)!
Rational theta_inv_series_coeff(unsigned k);

}  // namespace bjcalc
