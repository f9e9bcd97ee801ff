#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bjcalc/phase_poly.hpp"
#include "bjcalc/theta.hpp"

namespace bjcalc {

/// P(z) exp((i/hbar) sigma(z0, z)) with sigma(z, w) = p.w_x - x.w_p.
struct ExpPolyTerm {
  PhasePoint z0;
  PhasePolynomial poly;

  Complex evaluate(const ThetaContext& ctx, const PhasePoint& z) const;
};

/// Finite sum of exponential-polynomial terms; at most one term per frequency point.
class ExpSymbol {
 public:
  ExpSymbol() = default;
  explicit ExpSymbol(ExpPolyTerm term) { add(std::move(term)); }

  /// Merges with an existing term of the same frequency point; zero terms are dropped.
  void add(ExpPolyTerm term);

  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Complex evaluate(const ThetaContext& ctx, const PhasePoint& z) const;

 private:
  std::vector<ExpPolyTerm> terms_;
};

/// Sum over alpha of d_alpha (d/dz)^alpha delta(z - z0).
struct DeltaJet {
  PhasePoint z0;
  std::map<MultiIndex, Complex> coeffs;

  int order() const;  // -1 for the zero jet
  double max_abs_coeff() const;
};

/// Symplectic Fourier transform of an exponential-polynomial term:
/// z^beta e^{(i/hbar) sigma(z0,z)} maps to (2 pi hbar)^n (i hbar)^{|beta_x|}
/// (-i hbar)^{|beta_p|} d^alpha delta_{z0}, where alpha swaps the x and p parts of beta.
DeltaJet to_jet(const ThetaContext& ctx, const ExpPolyTerm& term);
ExpPolyTerm from_jet(const ThetaContext& ctx, const DeltaJet& jet);

/// Taylor polynomial of h -> Theta(z0 + h), truncated at total degree `order`.
PhasePolynomial theta_taylor(const ThetaContext& ctx, const PhasePoint& z0, unsigned order);

/// d^beta Theta(z0) for all |beta| <= order.
std::map<MultiIndex, double> theta_derivatives(const ThetaContext& ctx, const PhasePoint& z0, unsigned order);

/// sinc^(m)(t) for m = 0..max_m.
std::vector<double> sinc_derivatives(double t, unsigned max_m);

/// Theta times a delta jet, by the distributional Leibniz rule at z0.
DeltaJet multiply_theta_jet(const ThetaContext& ctx, const DeltaJet& jet);

class DivisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DivisionOptions {
  std::optional<unsigned> max_order;  // defaults to input order + 1 at zeros of Theta
  double zero_tolerance = 1e-12;      // |Theta(z0)| at or below this counts as a zero
  double residual_tolerance = 1e-10;
};

ExpSymbol bj_to_weyl_exp(const ThetaContext& ctx, const ExpSymbol& a);

/// Born-Jordan symbol a with bj_to_weyl_exp(a) = b. At zeros of Theta the
/// minimal-norm jet is returned; throws DivisionError if the residual exceeds
/// the tolerance at the requested order.
ExpSymbol weyl_to_bj_exp(const ThetaContext& ctx, const ExpSymbol& b, const DivisionOptions& options = {});

/// Born-Jordan symbol of the Heisenberg operator with Weyl symbol e^{(i/hbar) sigma(z0,z)}.
ExpPolyTerm solve_heisenberg_bj(const ThetaContext& ctx, const PhasePoint& z0,
                                double zero_tolerance = DivisionOptions{}.zero_tolerance);

/// A nonzero symbol supported in the ball of radius r whose Weyl symbol vanishes,
/// when r >= sqrt(4 pi hbar); nothing otherwise.
std::optional<ExpPolyTerm> kernel_witness(const ThetaContext& ctx, double r);

/// "<poly> exp(i/hbar*sigma([x0..., p0...],z))"; a unit polynomial and a zero
/// frequency point are omitted.
std::string format_exp_term(const ExpPolyTerm& term, int precision);
std::string format_exp_symbol(const ExpSymbol& symbol, int precision);

}  // namespace bjcalc
