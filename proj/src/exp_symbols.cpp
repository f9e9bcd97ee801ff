#include "bjcalc/exp_symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "bjcalc/rational.hpp"
#include "bjcalc/series.hpp"

namespace bjcalc {

namespace {

constexpr double kPi = std::numbers::pi;

Complex i_pow(unsigned k) {
  switch (k % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

double jet_normalization(const ThetaContext& ctx) { return std::pow(2.0 * kPi * ctx.hbar, ctx.n); }

// Fourier factor picked up by z^beta: (i hbar)^{|beta_x|} (-i hbar)^{|beta_p|}.
Complex monomial_factor(const ThetaContext& ctx, const MultiIndex& beta) {
  unsigned bx = 0;
  unsigned bp = 0;
  for (unsigned j = 0; j < ctx.n; ++j) {
    bx += beta[j];
    bp += beta[ctx.n + j];
  }
  const double sign = bp % 2 == 0 ? 1.0 : -1.0;
  return sign * i_pow(bx + bp) * std::pow(ctx.hbar, static_cast<double>(bx + bp));
}

MultiIndex swap_halves(const MultiIndex& alpha, unsigned n) {
  MultiIndex out(2 * n);
  for (unsigned j = 0; j < n; ++j) {
    out[j] = alpha[n + j];
    out[n + j] = alpha[j];
  }
  return out;
}

bool dominates(const MultiIndex& alpha, const MultiIndex& beta) {
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (beta[j] > alpha[j]) return false;
  }
  return true;
}

double multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  double out = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    for (unsigned k = 1; k <= beta[j]; ++k) {
      out = out * (alpha[j] - beta[j] + k) / k;
    }
  }
  return out;
}

MultiIndex difference(const MultiIndex& alpha, const MultiIndex& beta) {
  MultiIndex out(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) out[j] = alpha[j] - beta[j];
  return out;
}

// Derivatives with Theta(z0) snapped to zero on the zero set.
std::map<MultiIndex, double> leibniz_derivatives(const ThetaContext& ctx, const PhasePoint& z0, unsigned order,
                                                 double zero_tolerance) {
  auto d = theta_derivatives(ctx, z0, order);
  const MultiIndex origin(2 * ctx.n, 0);
  if (std::abs(d[origin]) <= zero_tolerance) {
    d[origin] = 0.0;
  }
  return d;
}

// Coefficient of a_alpha in the gamma component of Theta * a.
double leibniz_entry(const std::map<MultiIndex, double>& derivs, const MultiIndex& alpha, const MultiIndex& gamma) {
  const MultiIndex beta = difference(alpha, gamma);
  const double sign = total_degree(beta) % 2 == 0 ? 1.0 : -1.0;
  return sign * multi_binomial(alpha, beta) * derivs.at(beta);
}

DeltaJet divide_jet(const ThetaContext& ctx, const DeltaJet& b, const DivisionOptions& options) {
  const unsigned vars = 2 * ctx.n;
  const int m = b.order();
  if (m < 0) {
    return DeltaJet{b.z0, {}};
  }
  const double theta0 = theta(ctx, b.z0);

  if (std::abs(theta0) > options.zero_tolerance) {
    const unsigned order = options.max_order ? std::max<unsigned>(*options.max_order, m) : m;
    const auto derivs = theta_derivatives(ctx, b.z0, order);
    DeltaJet a{b.z0, {}};
    // Highest order first: the gamma equation involves a_alpha for alpha >= gamma only.
    for (const MultiIndex& gamma : multi_indices_up_to(vars, order)) {
      auto it = b.coeffs.find(gamma);
      Complex acc = it == b.coeffs.end() ? Complex{} : it->second;
      for (const auto& [alpha, value] : a.coeffs) {
        if (alpha != gamma && dominates(alpha, gamma)) {
          acc -= value * leibniz_entry(derivs, alpha, gamma);
        }
      }
      if (acc != Complex{}) {
        a.coeffs[gamma] = acc / theta0;
      }
    }
    return a;
  }

  const unsigned order = options.max_order ? *options.max_order : static_cast<unsigned>(m) + 1;
  const unsigned rows_order = std::max<unsigned>(order, m);
  const auto derivs = leibniz_derivatives(ctx, b.z0, rows_order, options.zero_tolerance);
  const auto cols = multi_indices_up_to(vars, order);
  const auto rows = multi_indices_up_to(vars, rows_order);

  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                   static_cast<Eigen::Index>(cols.size()));
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto it = b.coeffs.find(rows[i]);
    if (it != b.coeffs.end()) rhs(static_cast<Eigen::Index>(i)) = it->second;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (dominates(cols[j], rows[i])) {
        matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = leibniz_entry(derivs, cols[j], rows[i]);
      }
    }
  }

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(matrix);
  const Eigen::VectorXcd solution = cod.solve(rhs);
  const double residual = (matrix * solution - rhs).norm();
  if (!(residual <= options.residual_tolerance * std::max(1.0, rhs.norm()))) {
    throw DivisionError("jet division at a zero of Theta left residual " + std::to_string(residual) +
                        " at order " + std::to_string(order) + "; increase max_order");
  }

  DeltaJet a{b.z0, {}};
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Complex value = solution(static_cast<Eigen::Index>(j));
    if (value != Complex{}) a.coeffs[cols[j]] = value;
  }
  return a;
}

std::string format_point(const PhasePoint& z, int precision) {
  std::string out = "[";
  const auto flat = z.flat();
  for (std::size_t k = 0; k < flat.size(); ++k) {
    if (k) out += ",";
    out += format_real(flat[k], precision);
  }
  return out + "]";
}

}  // namespace

Complex ExpPolyTerm::evaluate(const ThetaContext& ctx, const PhasePoint& z) const {
  ctx.require_dim(z);
  ctx.require_dim(z0);
  double sigma = 0.0;
  for (unsigned j = 0; j < ctx.n; ++j) {
    sigma += z0.p[j] * z.x[j] - z0.x[j] * z.p[j];
  }
  return poly.evaluate(z) * std::exp(Complex(0.0, sigma / ctx.hbar));
}

void ExpSymbol::add(ExpPolyTerm term) {
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const ExpPolyTerm& t) { return t.z0 == term.z0; });
  if (it == terms_.end()) {
    if (!term.poly.is_zero()) terms_.push_back(std::move(term));
    return;
  }
  it->poly += term.poly;
  if (it->poly.is_zero()) terms_.erase(it);
}

Complex ExpSymbol::evaluate(const ThetaContext& ctx, const PhasePoint& z) const {
  Complex sum{};
  for (const auto& t : terms_) sum += t.evaluate(ctx, z);
  return sum;
}

int DeltaJet::order() const {
  int d = -1;
  for (const auto& [alpha, c] : coeffs) d = std::max(d, static_cast<int>(total_degree(alpha)));
  return d;
}

double DeltaJet::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [alpha, c] : coeffs) m = std::max(m, std::abs(c));
  return m;
}

DeltaJet to_jet(const ThetaContext& ctx, const ExpPolyTerm& term) {
  ctx.require_dim(term.z0);
  if (term.poly.dim() != ctx.n) {
    throw std::invalid_argument("to_jet: polynomial dimension does not match context");
  }
  const double norm = jet_normalization(ctx);
  DeltaJet jet{term.z0, {}};
  for (const auto& [beta, c] : term.poly.coeffs()) {
    jet.coeffs[swap_halves(beta, ctx.n)] += norm * c * monomial_factor(ctx, beta);
  }
  return jet;
}

ExpPolyTerm from_jet(const ThetaContext& ctx, const DeltaJet& jet) {
  ctx.require_dim(jet.z0);
  const double norm = jet_normalization(ctx);
  ExpPolyTerm term{jet.z0, PhasePolynomial(ctx.n)};
  for (const auto& [alpha, d] : jet.coeffs) {
    const MultiIndex beta = swap_halves(alpha, ctx.n);
    term.poly.add_term(beta, d / (norm * monomial_factor(ctx, beta)));
  }
  return term;
}

std::vector<double> sinc_derivatives(double t, unsigned max_m) {
  std::vector<double> out(max_m + 1);
  if (std::abs(t) <= 2.0) {
    // Termwise differentiation of sum theta_k t^(2k).
    for (unsigned m = 0; m <= max_m; ++m) {
      double sum = 0.0;
      for (unsigned k = (m + 1) / 2; k <= m / 2 + 30; ++k) {
        mpz_class falling = 1;
        for (unsigned q = 0; q < m; ++q) falling *= 2 * k - q;
        const double coeff = (theta_series_coeff(k) * Rational(falling)).to_double();
        sum += coeff * std::pow(t, static_cast<double>(2 * k - m));
      }
      out[m] = sum;
    }
    return out;
  }
  // t s(t) = sin t, differentiated m times: t s^(m) + m s^(m-1) = sin^(m)(t).
  out[0] = std::sin(t) / t;
  for (unsigned m = 1; m <= max_m; ++m) {
    out[m] = (std::sin(t + 0.5 * kPi * m) - m * out[m - 1]) / t;
  }
  return out;
}

PhasePolynomial theta_taylor(const ThetaContext& ctx, const PhasePoint& z0, unsigned order) {
  ctx.require_dim(z0);
  const unsigned n = ctx.n;
  const double scale = 1.0 / (2.0 * ctx.hbar);

  // t(z0 + h) - t(z0) = (x0.h_p + h_x.p0 + h_x.h_p) / 2 hbar
  PhasePolynomial dt(n);
  for (unsigned j = 0; j < n; ++j) {
    MultiIndex hx(2 * n, 0);
    hx[j] = 1;
    MultiIndex hp(2 * n, 0);
    hp[n + j] = 1;
    MultiIndex hxhp(2 * n, 0);
    hxhp[j] = 1;
    hxhp[n + j] = 1;
    dt.add_term(hp, z0.x[j] * scale);
    dt.add_term(hx, z0.p[j] * scale);
    dt.add_term(hxhp, scale);
  }

  const auto s = sinc_derivatives(z0.x_dot_p() * scale, order);
  PhasePolynomial result = PhasePolynomial::constant(n, s[0]);
  PhasePolynomial power = PhasePolynomial::constant(n, 1.0);
  double factorial = 1.0;
  for (unsigned m = 1; m <= order; ++m) {
    power = power.truncated_product(dt, order);
    factorial *= m;
    result += power * Complex(s[m] / factorial);
  }
  return result;
}

std::map<MultiIndex, double> theta_derivatives(const ThetaContext& ctx, const PhasePoint& z0, unsigned order) {
  const PhasePolynomial taylor = theta_taylor(ctx, z0, order);
  std::map<MultiIndex, double> out;
  for (const MultiIndex& beta : multi_indices_up_to(2 * ctx.n, order)) {
    out[beta] = taylor.coefficient(beta).real() * multi_factorial(beta);
  }
  return out;
}

DeltaJet multiply_theta_jet(const ThetaContext& ctx, const DeltaJet& jet) {
  ctx.require_dim(jet.z0);
  DeltaJet out{jet.z0, {}};
  const int m = jet.order();
  if (m < 0) {
    return out;
  }
  const auto derivs = leibniz_derivatives(ctx, jet.z0, static_cast<unsigned>(m), DivisionOptions{}.zero_tolerance);
  for (const auto& [alpha, d] : jet.coeffs) {
    for (const auto& [beta, dtheta] : derivs) {
      if (dtheta == 0.0 || !dominates(alpha, beta)) continue;
      const double sign = total_degree(beta) % 2 == 0 ? 1.0 : -1.0;
      out.coeffs[difference(alpha, beta)] += d * (sign * multi_binomial(alpha, beta) * dtheta);
    }
  }
  std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == Complex{}; });
  return out;
}

ExpSymbol bj_to_weyl_exp(const ThetaContext& ctx, const ExpSymbol& a) {
  ExpSymbol out;
  for (const auto& term : a.terms()) {
    out.add(from_jet(ctx, multiply_theta_jet(ctx, to_jet(ctx, term))));
  }
  return out;
}

ExpSymbol weyl_to_bj_exp(const ThetaContext& ctx, const ExpSymbol& b, const DivisionOptions& options) {
  ExpSymbol out;
  for (const auto& term : b.terms()) {
    out.add(from_jet(ctx, divide_jet(ctx, to_jet(ctx, term), options)));
  }
  return out;
}

ExpPolyTerm solve_heisenberg_bj(const ThetaContext& ctx, const PhasePoint& z0, double zero_tolerance) {
  ctx.require_dim(z0);
  const unsigned n = ctx.n;
  const double theta0 = theta(ctx, z0);
  if (std::abs(theta0) > zero_tolerance) {
    return ExpPolyTerm{z0, PhasePolynomial::constant(n, 1.0 / theta0)};
  }
  const auto grad = theta_gradient(ctx, z0);
  double norm2 = 0.0;
  for (double g : grad) norm2 += g * g;

  // (i/hbar) sigma(z, c) = (i/hbar) (p.c_x - x.c_p), c = -grad / |grad|^2
  PhasePolynomial poly(n);
  const Complex i_over_hbar(0.0, 1.0 / ctx.hbar);
  for (unsigned j = 0; j < n; ++j) {
    const double cx = -grad[j] / norm2;
    const double cp = -grad[n + j] / norm2;
    MultiIndex x(2 * n, 0);
    x[j] = 1;
    MultiIndex p(2 * n, 0);
    p[n + j] = 1;
    poly.add_term(p, i_over_hbar * cx);
    poly.add_term(x, -i_over_hbar * cp);
  }
  return ExpPolyTerm{z0, poly};
}

std::optional<ExpPolyTerm> kernel_witness(const ThetaContext& ctx, double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("kernel_witness: r must be non-negative");
  }
  if (r < threshold_radius(ctx)) {
    return std::nullopt;
  }
  return ExpPolyTerm{witness_point(ctx), PhasePolynomial::constant(ctx.n, 1.0)};
}

std::string format_exp_term(const ExpPolyTerm& term, int precision) {
  const std::string poly = format_phase_polynomial(term.poly, precision);
  const auto flat = term.z0.flat();
  const bool at_origin = std::all_of(flat.begin(), flat.end(), [](double v) { return v == 0.0; });
  if (at_origin) {
    return poly;
  }
  const std::string exp_factor = "exp(i/hbar*sigma(" + format_point(term.z0, precision) + ",z))";
  if (poly == "1") {
    return exp_factor;
  }
  const bool compound = term.poly.coeffs().size() > 1;
  return (compound ? "(" + poly + ")" : poly) + " " + exp_factor;
}

std::string format_exp_symbol(const ExpSymbol& symbol, int precision) {
  if (symbol.is_zero()) {
    return "0";
  }
  std::string out;
  for (const auto& term : symbol.terms()) {
    if (!out.empty()) out += " + ";
    out += format_exp_term(term, precision);
  }
  return out;
}

}  // namespace bjcalc
