#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "bjcalc/exp_symbols.hpp"

namespace bjcalc::fixtures {

inline PhasePoint random_point(std::mt19937_64& rng, unsigned n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> flat(2 * n);
  for (auto& v : flat) v = u(rng);
  return PhasePoint::from_flat(flat);
}

// A zero of Theta on branch k near a random direction.
inline PhasePoint random_zero(std::mt19937_64& rng, const ThetaContext& ctx, long k) {
  for (;;) {
    PhasePoint z = random_point(rng, ctx.n, 2.0);
    const double xp = z.x_dot_p();
    if (xp * k <= 0.1) continue;
    const double s = std::sqrt(2 * std::numbers::pi * ctx.hbar * k / xp);
    for (auto& v : z.x) v *= s;
    for (auto& v : z.p) v *= s;
    return z;
  }
}

inline PhasePolynomial random_poly(std::mt19937_64& rng, unsigned n, unsigned degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PhasePolynomial poly(n);
  for (const auto& alpha : multi_indices_up_to(2 * n, degree)) poly.add_term(alpha, Complex(u(rng), u(rng)));
  return poly;
}

inline DeltaJet random_jet(std::mt19937_64& rng, const PhasePoint& z0, unsigned order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DeltaJet jet{z0, {}};
  for (const auto& alpha : multi_indices_up_to(2 * z0.dim(), order)) jet.coeffs[alpha] = Complex(u(rng), u(rng));
  return jet;
}

// psi(z0 + h) as a polynomial in h.
inline PhasePolynomial shift(const PhasePolynomial& psi, const PhasePoint& z0) {
  const unsigned n = psi.dim();
  const auto c = z0.flat();
  PhasePolynomial out(n);
  for (const auto& [alpha, coeff] : psi.coeffs()) {
    PhasePolynomial term = PhasePolynomial::constant(n, coeff);
    for (unsigned j = 0; j < 2 * n; ++j) {
      const PhasePolynomial factor = PhasePolynomial::constant(n, c[j]) + PhasePolynomial::coordinate(n, j);
      for (unsigned e = 0; e < alpha[j]; ++e) term = term * factor;
    }
    out += term;
  }
  return out;
}

// Taylor polynomial of Theta(z0 + h) built as sin(t0 + d)/(t0 + d) with sin and
// cos of the nilpotent increment d and a geometric-series reciprocal. Needs t0 != 0.
inline PhasePolynomial theta_taylor_oracle(const ThetaContext& ctx, const PhasePoint& z0, unsigned order) {
  const unsigned n = ctx.n;
  const double t0 = z0.x_dot_p() / (2 * ctx.hbar);
  PhasePolynomial d(n);
  for (unsigned j = 0; j < n; ++j) {
    const PhasePolynomial hx = PhasePolynomial::coordinate(n, j);
    const PhasePolynomial hp = PhasePolynomial::coordinate(n, n + j);
    d += (hp * Complex(z0.x[j]) + hx * Complex(z0.p[j]) + hx * hp) * Complex(1.0 / (2 * ctx.hbar));
  }
  if (std::abs(t0) < 1.0) {
    // Maclaurin series of sin(u)/u in u = t0 + d; the reciprocal of t0 would amplify rounding.
    const PhasePolynomial u = d + PhasePolynomial::constant(n, t0);
    const PhasePolynomial u2 = u.truncated_product(u, order);
    PhasePolynomial sum(n);
    PhasePolynomial u_pow = PhasePolynomial::constant(n, 1.0);
    double coeff = 1.0;
    for (unsigned k = 0; k <= 30; ++k) {
      if (k > 0) {
        u_pow = u_pow.truncated_product(u2, order);
        coeff *= -1.0 / ((2.0 * k) * (2.0 * k + 1.0));
      }
      sum += u_pow * Complex(coeff);
    }
    return sum;
  }
  PhasePolynomial sin_d(n);
  PhasePolynomial cos_d(n);
  PhasePolynomial recip(n);
  PhasePolynomial power = PhasePolynomial::constant(n, 1.0);
  double fact = 1.0;
  for (unsigned k = 0; k <= order; ++k) {
    if (k > 0) {
      power = power.truncated_product(d, order);
      fact *= k;
    }
    const double sign_sin = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 1) sin_d += power * Complex(sign_sin / fact);
    if (k % 2 == 0) cos_d += power * Complex(sign_sin / fact);
    recip += power * Complex(std::pow(-1.0 / t0, k) / t0);
  }
  const PhasePolynomial numerator = cos_d * Complex(std::sin(t0)) + sin_d * Complex(std::cos(t0));
  return numerator.truncated_product(recip, order);
}

// <jet, psi> with <d^alpha delta_z0, psi> = (-1)^|alpha| d^alpha psi(z0), psi given by its Taylor polynomial at z0.
inline Complex pair(const DeltaJet& jet, const PhasePolynomial& taylor) {
  Complex sum{};
  for (const auto& [alpha, d] : jet.coeffs) {
    const double sign = total_degree(alpha) % 2 == 0 ? 1.0 : -1.0;
    sum += d * sign * multi_factorial(alpha) * taylor.coefficient(alpha);
  }
  return sum;
}

}  // namespace bjcalc::fixtures
