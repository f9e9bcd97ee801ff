#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bjcalc/theta.hpp"

namespace bjcalc {

/// Covariant symbol sampled on the uniform grid z_ij = (-L + i h, -L + j h),
/// h = 2L/N, stored row-major (row i is x, column j is p). n = 1 only.
struct GridSymbol {
  ThetaContext ctx;
  double half_width = 1.0;
  unsigned resolution = 2;
  double support_radius = 1.0;
  std::vector<std::complex<double>> samples;

  double spacing() const { return 2.0 * half_width / resolution; }
  double coordinate(unsigned i) const { return -half_width + i * spacing(); }
  PhasePoint point(unsigned i, unsigned j) const;
  bool in_support(unsigned i, unsigned j) const;
  std::complex<double>& at(unsigned i, unsigned j) { return samples[std::size_t{i} * resolution + j]; }
  const std::complex<double>& at(unsigned i, unsigned j) const { return samples[std::size_t{i} * resolution + j]; }

  /// Throws std::invalid_argument when an invariant fails, including samples
  /// above 1e-14 outside the support disc.
  void validate() const;
};

class ThresholdViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GridSymbol make_grid(const ThetaContext& ctx, double half_width, unsigned resolution, double support_radius);

/// exp(-|z|^2 / 2 s^2) on |z| <= r and 0 outside; s defaults to r/8.
GridSymbol gaussian_bump(const ThetaContext& ctx, double half_width, unsigned resolution, double support_radius,
                         std::optional<double> width = std::nullopt);

/// Pointwise multiplication by Theta.
GridSymbol grid_forward(const GridSymbol& a);

/// Pointwise division by Theta on the support disc. Throws ThresholdViolation
/// when r >= sqrt(4 pi hbar) or min |Theta| on the support is below 1e-9.
GridSymbol grid_inverse(const GridSymbol& b);

/// max over support grid points of 1/|Theta|; same threshold errors as grid_inverse.
double condition_number(const GridSymbol& b);

/// a(z) = (2 pi hbar)^-1 sum over the grid of exp(-(i/hbar) sigma(z, z')) a_sigma(z') h^2.
std::vector<std::complex<double>> synthesize(const GridSymbol& a, std::span<const PhasePoint> points);

/// "BJGR", u32 version 1, u32 N, f64 L, f64 hbar, f64 r, N^2 complex128, little-endian.
void write_grid_binary(const GridSymbol& grid, std::ostream& out);
GridSymbol read_grid_binary(std::istream& in);

/// Header "z1,z2,re,im" then one line per grid point.
void write_grid_csv(const GridSymbol& grid, std::ostream& out, int precision = 17);

}  // namespace bjcalc
