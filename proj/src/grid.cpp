#include "bjcalc/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

namespace bjcalc {

namespace {

constexpr char kMagic[4] = {'B', 'J', 'G', 'R'};
constexpr std::uint32_t kVersion = 1;
constexpr double kSupportTolerance = 1e-14;
constexpr double kMinTheta = 1e-9;

template <class T>
void write_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T read_le(std::istream& in, const char* what) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw GridFormatError(std::string("grid file truncated while reading ") + what);
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void require_below_threshold(const GridSymbol& g) {
  const double threshold = threshold_radius(g.ctx);
  if (g.support_radius >= threshold) {
    throw ThresholdViolation("support radius " + std::to_string(g.support_radius) +
                             " is not below sqrt(4 pi hbar) = " + std::to_string(threshold) +
                             "; Theta vanishes on the support");
  }
}

double support_min_abs_theta(const GridSymbol& g) {
  double m = std::numeric_limits<double>::infinity();
  for (unsigned i = 0; i < g.resolution; ++i) {
    for (unsigned j = 0; j < g.resolution; ++j) {
      if (g.in_support(i, j)) m = std::min(m, std::abs(theta(g.ctx, g.point(i, j))));
    }
  }
  return m;
}

}  // namespace

PhasePoint GridSymbol::point(unsigned i, unsigned j) const { return PhasePoint({coordinate(i)}, {coordinate(j)}); }

bool GridSymbol::in_support(unsigned i, unsigned j) const {
  return std::hypot(coordinate(i), coordinate(j)) <= support_radius;
}

void GridSymbol::validate() const {
  if (ctx.n != 1) {
    throw std::invalid_argument("grid symbols require n = 1");
  }
  if (!(std::isfinite(half_width) && half_width > 0.0)) {
    throw std::invalid_argument("grid half-width must be positive and finite");
  }
  if (resolution == 0 || resolution % 2 != 0) {
    throw std::invalid_argument("grid resolution must be a positive even integer");
  }
  if (!(std::isfinite(support_radius) && support_radius > 0.0 && support_radius <= half_width)) {
    throw std::invalid_argument("support radius must satisfy 0 < r <= L");
  }
  if (samples.size() != std::size_t{resolution} * resolution) {
    throw std::invalid_argument("grid sample count must be N^2");
  }
  for (unsigned i = 0; i < resolution; ++i) {
    for (unsigned j = 0; j < resolution; ++j) {
      const auto v = at(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::invalid_argument("grid samples must be finite");
      }
      if (!in_support(i, j) && std::abs(v) > kSupportTolerance) {
        throw std::invalid_argument("grid sample outside the support disc is not zero");
      }
    }
  }
}

GridSymbol make_grid(const ThetaContext& ctx, double half_width, unsigned resolution, double support_radius) {
  GridSymbol g{ctx, half_width, resolution, support_radius, {}};
  g.samples.assign(std::size_t{resolution} * resolution, {});
  g.validate();
  return g;
}

GridSymbol gaussian_bump(const ThetaContext& ctx, double half_width, unsigned resolution, double support_radius,
                         std::optional<double> width) {
  GridSymbol g = make_grid(ctx, half_width, resolution, support_radius);
  const double s = width.value_or(support_radius / 8.0);
  if (!(s > 0.0)) {
    throw std::invalid_argument("gaussian width must be positive");
  }
  for (unsigned i = 0; i < resolution; ++i) {
    for (unsigned j = 0; j < resolution; ++j) {
      if (!g.in_support(i, j)) continue;
      const double x = g.coordinate(i);
      const double p = g.coordinate(j);
      g.at(i, j) = std::exp(-(x * x + p * p) / (2.0 * s * s));
    }
  }
  return g;
}

GridSymbol grid_forward(const GridSymbol& a) {
  a.validate();
  GridSymbol out = a;
  for (unsigned i = 0; i < a.resolution; ++i) {
    for (unsigned j = 0; j < a.resolution; ++j) {
      out.at(i, j) *= theta(a.ctx, a.point(i, j));
    }
  }
  return out;
}

GridSymbol grid_inverse(const GridSymbol& b) {
  b.validate();
  require_below_threshold(b);
  const double min_theta = support_min_abs_theta(b);
  if (min_theta < kMinTheta) {
    throw ThresholdViolation("min |Theta| on the support is " + std::to_string(min_theta) + ", below 1e-9");
  }
  GridSymbol out = b;
  for (unsigned i = 0; i < b.resolution; ++i) {
    for (unsigned j = 0; j < b.resolution; ++j) {
      if (b.in_support(i, j)) out.at(i, j) /= theta(b.ctx, b.point(i, j));
    }
  }
  return out;
}

double condition_number(const GridSymbol& b) {
  b.validate();
  require_below_threshold(b);
  const double min_theta = support_min_abs_theta(b);
  if (min_theta < kMinTheta) {
    throw ThresholdViolation("min |Theta| on the support is " + std::to_string(min_theta) + ", below 1e-9");
  }
  return 1.0 / min_theta;
}

std::vector<std::complex<double>> synthesize(const GridSymbol& a, std::span<const PhasePoint> points) {
  a.validate();
  const double h = a.spacing();
  const double prefactor = h * h / (2.0 * std::numbers::pi * a.ctx.hbar);
  std::vector<std::complex<double>> out;
  out.reserve(points.size());
  for (const PhasePoint& z : points) {
    a.ctx.require_dim(z);
    std::complex<double> sum{};
    for (unsigned i = 0; i < a.resolution; ++i) {
      for (unsigned j = 0; j < a.resolution; ++j) {
        const auto v = a.at(i, j);
        if (v == std::complex<double>{}) continue;
        // sigma(z, z') = p x' - x p'
        const double sigma = z.p[0] * a.coordinate(i) - z.x[0] * a.coordinate(j);
        sum += std::polar(1.0, -sigma / a.ctx.hbar) * v;
      }
    }
    out.push_back(prefactor * sum);
  }
  return out;
}

void write_grid_binary(const GridSymbol& grid, std::ostream& out) {
  grid.validate();
  out.write(kMagic, sizeof kMagic);
  write_le<std::uint32_t>(out, kVersion);
  write_le<std::uint32_t>(out, grid.resolution);
  write_le<double>(out, grid.half_width);
  write_le<double>(out, grid.ctx.hbar);
  write_le<double>(out, grid.support_radius);
  for (const auto& v : grid.samples) {
    write_le<double>(out, v.real());
    write_le<double>(out, v.imag());
  }
  if (!out) {
    throw GridFormatError("failed to write grid file");
  }
}

GridSymbol read_grid_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw GridFormatError("not a grid file (bad magic)");
  }
  const auto version = read_le<std::uint32_t>(in, "version");
  if (version != kVersion) {
    throw GridFormatError("unsupported grid file version " + std::to_string(version));
  }
  const auto n = read_le<std::uint32_t>(in, "N");
  const auto half_width = read_le<double>(in, "L");
  const auto hbar = read_le<double>(in, "hbar");
  const auto radius = read_le<double>(in, "r");
  if (n == 0 || n % 2 != 0 || n > 65536) {
    throw GridFormatError("invalid grid resolution " + std::to_string(n));
  }
  if (!(std::isfinite(hbar) && hbar > 0.0)) {
    throw GridFormatError("invalid hbar in grid file");
  }
  GridSymbol g{ThetaContext(hbar, 1), half_width, n, radius, {}};
  g.samples.resize(std::size_t{n} * n);
  for (auto& v : g.samples) {
    const double re = read_le<double>(in, "samples");
    const double im = read_le<double>(in, "samples");
    v = {re, im};
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw GridFormatError(std::string("invalid grid file: ") + e.what());
  }
  return g;
}

void write_grid_csv(const GridSymbol& grid, std::ostream& out, int precision) {
  grid.validate();
  char line[160];
  out << "z1,z2,re,im\n";
  for (unsigned i = 0; i < grid.resolution; ++i) {
    for (unsigned j = 0; j < grid.resolution; ++j) {
      const auto v = grid.at(i, j);
      std::snprintf(line, sizeof line, "%.*g,%.*g,%.*g,%.*g\n", precision, grid.coordinate(i), precision,
                    grid.coordinate(j), precision, v.real(), precision, v.imag());
      out << line;
    }
  }
}

}  // namespace bjcalc
