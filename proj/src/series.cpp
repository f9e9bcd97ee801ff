#include "bjcalc/series.hpp"

#include <vector>

namespace bjcalc {

// Akiyama-Tanigawa algorithm. It yields B_1 = +1/2, so the sign of that single
// entry is flipped to match the B_1 = -1/2 convention.
Rational bernoulli(unsigned m) {
  std::vector<Rational> row(m + 1);
  for (unsigned j = 0; j <= m; ++j) {
    row[j] = Rational(1, static_cast<long>(j) + 1);
    for (unsigned k = j; k >= 1; --k) {
      row[k - 1] = Rational(static_cast<long>(k)) * (row[k - 1] - row[k]);
    }
  }
  return m == 1 ? -row[0] : row[0];
}

Rational theta_series_coeff(unsigned k) {
  Rational c(mpz_class(1), factorial(2 * k + 1));
  return (k % 2 == 0) ? c : -c;
}

Rational theta_inv_series_coeff(unsigned k) {
  const mpz_class pow4 = mpz_class(1) << (2 * k);
  Rational c = Rational(mpz_class(pow4 - 2)) * bernoulli(2 * k) * Rational(mpz_class(1), factorial(2 * k));
  // (-1)^(k-1)
  return (k % 2 == 1) ? c : -c;
}

}  // namespace bjcalc
