#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bjcalc {

/// Phase-space point z = (x, p) with x, p in R^n.
struct PhasePoint {
  std::vector<double> x;
  std::vector<double> p;

  PhasePoint() = default;
  PhasePoint(std::vector<double> x_coords, std::vector<double> p_coords);

  static PhasePoint zero(unsigned n);
  /// From (x_1..x_n, p_1..p_n); the length must be even and non-zero.
  static PhasePoint from_flat(std::span<const double> z);

  unsigned dim() const { return static_cast<unsigned>(x.size()); }
  std::vector<double> flat() const;
  double norm() const;
  double x_dot_p() const;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Numeric Planck constant and number of degrees of freedom.
struct ThetaContext {
  double hbar = 1.0;
  unsigned n = 1;

  ThetaContext() = default;
  ThetaContext(double hbar_value, unsigned dim);

  void require_dim(const PhasePoint& z) const;
};

/// sin(t)/t and its first derivative, with Maclaurin branches for |t| < 1e-4.
double sinc(double t);
double sinc_prime(double t);

/// Cohen kernel Theta(z) = sinc(x.p / 2 hbar).
double theta(const ThetaContext& ctx, const PhasePoint& z);

/// Composite Gauss-Legendre evaluation of int_0^1 cos((tau - 1/2) x.p / hbar) dtau
/// over m equal panels.
double theta_quadrature(const ThetaContext& ctx, const PhasePoint& z, unsigned panels);

/// Gradient ordered as (d/dx_1..d/dx_n, d/dp_1..d/dp_n).
std::vector<double> theta_gradient(const ThetaContext& ctx, const PhasePoint& z);

/// sqrt(4 pi hbar): distance from the origin to the zero set of Theta.
double threshold_radius(const ThetaContext& ctx);

/// x0 = p0 = (2 pi hbar / n)^(1/2) (1, ..., 1): a zero of Theta at distance
/// threshold_radius from the origin.
PhasePoint witness_point(const ThetaContext& ctx);

struct ZeroSetProjection {
  double distance = 0.0;
  PhasePoint nearest;
  long k = 0;  // branch x.p = 2 pi k hbar
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closest point on the hypersurface x.p = 2 pi k hbar (k != 0).
ZeroSetProjection distance_to_branch(const ThetaContext& ctx, const PhasePoint& z, long k);

/// Closest point of the zero set Z = union over k != 0 of {x.p = 2 pi k hbar}.
/// Ties prefer the smaller |k|, then positive k.
ZeroSetProjection zero_set_distance(const ThetaContext& ctx, const PhasePoint& z);

struct BoundsConfig {
  double box = 10.0;            // half-width of the sampling box, in units of sqrt(hbar)
  std::uint64_t samples = 100000;
  std::uint64_t zero_samples = 1000;
  std::uint64_t seed = 20160101;
  double ratio_floor = 1e-3;    // |Theta| (1+|z|)^2 / dist(z, Z)
  double gradient_floor = 2.0 - 1e-9;  // |grad Theta| |z| on Z
};

struct BoundsReport {
  bool passed = true;
  double min_ratio = 0.0;        // min |Theta|(1+|z|)^2 / dist(z,Z) over box samples
  PhasePoint ratio_witness;
  double min_gradient_product = 0.0;  // min |grad Theta(z)| |z| over sampled zeros
  PhasePoint gradient_witness;
  double min_sinc_ratio = 0.0;   // min |sinc(t/2hbar)| (1+|t|) / dist(t, Z0)
  double sinc_ratio_witness = 0.0;
  double min_near_origin_sinc = 0.0;  // min |sinc(t/2hbar)| over |t| <= pi hbar
  std::vector<std::string> failures;
};

/// Sampling check of the lower bounds on |Theta| and |grad Theta| used to
/// divide by Theta.
BoundsReport check_hormander_bounds(const ThetaContext& ctx, const BoundsConfig& config);

/// y_1 = z_1^2, y_j = z_1 z_j (2 <= j <= n), y_(n+j-1) = z_1 z_(n+j) (2 <= j <= n),
/// y_2n = x.p. Requires z_1 > 0; throws std::domain_error otherwise.
std::vector<double> cone_change_of_coordinates(const PhasePoint& z);

/// Inverse of cone_change_of_coordinates. Requires y_1 > 0 and an even length.
PhasePoint cone_change_of_coordinates_inverse(std::span<const double> y);

}  // namespace bjcalc
