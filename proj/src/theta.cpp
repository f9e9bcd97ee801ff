#include "bjcalc/theta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace bjcalc {

PhasePoint::PhasePoint(std::vector<double> x_coords, std::vector<double> p_coords)
    : x(std::move(x_coords)), p(std::move(p_coords)) {
  if (x.size() != p.size() || x.empty()) {
    throw std::invalid_argument("PhasePoint: x and p must have the same non-zero length");
  }
}

PhasePoint PhasePoint::zero(unsigned n) { return PhasePoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)); }

PhasePoint PhasePoint::from_flat(std::span<const double> z) {
  if (z.empty() || z.size() % 2 != 0) {
    throw std::invalid_argument("PhasePoint: expected 2n coordinates, got " + std::to_string(z.size()));
  }
  const std::size_t n = z.size() / 2;
  return PhasePoint(std::vector<double>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)),
                    std::vector<double>(z.begin() + static_cast<std::ptrdiff_t>(n), z.end()));
}

std::vector<double> PhasePoint::flat() const {
  std::vector<double> out(x);
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

double PhasePoint::norm() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum += x[j] * x[j] + p[j] * p[j];
  }
  return std::sqrt(sum);
}

double PhasePoint::x_dot_p() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum += x[j] * p[j];
  }
  return sum;
}

ThetaContext::ThetaContext(double hbar_value, unsigned dim) : hbar(hbar_value), n(dim) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("ThetaContext: hbar must be positive and finite");
  }
  if (n == 0) {
    throw std::invalid_argument("ThetaContext: dimension must be at least 1");
  }
}

void ThetaContext::require_dim(const PhasePoint& z) const {
  if (z.dim() != n || z.p.size() != n) {
    throw std::invalid_argument("phase point has dimension " + std::to_string(z.dim()) + ", context expects " +
                                std::to_string(n));
  }
}

namespace {

constexpr double kSeriesCutoff = 1e-4;

}  // namespace

double sinc(double t) {
  if (std::abs(t) < kSeriesCutoff) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
  }
  return std::sin(t) / t;
}

double sinc_prime(double t) {
  if (std::abs(t) < kSeriesCutoff) {
    const double t2 = t * t;
    return -t / 3.0 + t * t2 / 30.0 - t * t2 * t2 / 840.0 + t * t2 * t2 * t2 / 45360.0;
  }
  return (t * std::cos(t) - std::sin(t)) / (t * t);
}

double theta(const ThetaContext& ctx, const PhasePoint& z) {
  ctx.require_dim(z);
  return sinc(z.x_dot_p() / (2.0 * ctx.hbar));
}

namespace {

constexpr std::size_t kGaussOrder = 8;

struct GaussRule {
  std::array<double, kGaussOrder> nodes;
  std::array<double, kGaussOrder> weights;
};

// Nodes and weights on [-1, 1] by Newton iteration on P_8.
GaussRule make_gauss_rule() {
  GaussRule rule{};
  const std::size_t n = kGaussOrder;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

}  // namespace

double theta_quadrature(const ThetaContext& ctx, const PhasePoint& z, unsigned panels) {
  ctx.require_dim(z);
  if (panels == 0) {
    throw std::invalid_argument("theta_quadrature: panel count must be at least 1");
  }
  const GaussRule& rule = gauss_rule();
  const double omega = z.x_dot_p() / ctx.hbar;
  const double width = 1.0 / panels;
  double sum = 0.0;
  for (unsigned k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < kGaussOrder; ++i) {
      const double tau = mid + 0.5 * width * rule.nodes[i];
      panel += rule.weights[i] * std::cos((tau - 0.5) * omega);
    }
    sum += 0.5 * width * panel;
  }
  return sum;
}

std::vector<double> theta_gradient(const ThetaContext& ctx, const PhasePoint& z) {
  ctx.require_dim(z);
  const double g = sinc_prime(z.x_dot_p() / (2.0 * ctx.hbar)) / (2.0 * ctx.hbar);
  std::vector<double> out(2 * ctx.n);
  for (unsigned j = 0; j < ctx.n; ++j) {
    out[j] = g * z.p[j];
    out[ctx.n + j] = g * z.x[j];
  }
  return out;
}

double threshold_radius(const ThetaContext& ctx) { return std::sqrt(4.0 * std::numbers::pi * ctx.hbar); }

PhasePoint witness_point(const ThetaContext& ctx) {
  const double c = std::sqrt(2.0 * std::numbers::pi * ctx.hbar / ctx.n);
  return PhasePoint(std::vector<double>(ctx.n, c), std::vector<double>(ctx.n, c));
}

namespace {

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) {
    s += e * e;
  }
  return std::sqrt(s);
}

std::string describe_point(const PhasePoint& z) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  const auto f = z.flat();
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << (i ? "," : "") << f[i];
  }
  os << "]";
  return os.str();
}

// Nearest point of {x.p = c} for c > 0. In the rotated coordinates
// U = (x+p)/sqrt2, V = (x-p)/sqrt2 the surface is |U|^2 - |V|^2 = 2c, and the
// Lagrange conditions put U_w parallel to U0 and V_w parallel to V0 with
// magnitudes a and b = beta a / (2a - alpha). The remaining scalar equation
// G(a) = a^2 - b(a)^2 - 2c is increasing in a and solved by safeguarded Newton.
PhasePoint project_positive_branch(const PhasePoint& z, double c) {
  const std::size_t n = z.x.size();
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::vector<double> u0(n), v0(n);
  for (std::size_t j = 0; j < n; ++j) {
    u0[j] = (z.x[j] + z.p[j]) * inv_sqrt2;
    v0[j] = (z.x[j] - z.p[j]) * inv_sqrt2;
  }
  const double alpha = norm_of(u0);
  const double beta = norm_of(v0);
  const double target = 2.0 * c;
  const double root_target = std::sqrt(target);
  const std::vector<double> diagonal(n, 1.0 / std::sqrt(static_cast<double>(n)));

  std::vector<double> u_dir = diagonal;
  std::vector<double> v_dir = diagonal;
  if (alpha > 0.0) {
    for (std::size_t j = 0; j < n; ++j) u_dir[j] = u0[j] / alpha;
  }
  if (beta > 0.0) {
    for (std::size_t j = 0; j < n; ++j) v_dir[j] = v0[j] / beta;
  }

  double a = 0.0;
  double b = 0.0;
  if (beta == 0.0 && alpha >= 2.0 * root_target) {
    // V_w has a free direction.
    a = 0.5 * alpha;
    b = std::sqrt(std::max(0.0, 0.25 * alpha * alpha - target));
  } else {
    auto b_of = [&](double av) { return beta == 0.0 ? 0.0 : beta * av / (2.0 * av - alpha); };
    auto g_of = [&](double av) {
      const double bv = b_of(av);
      return av * av - bv * bv - target;
    };
    // G <= 0 at the left end of the domain (it tends to -infinity at alpha/2).
    double lo = std::max(0.5 * alpha, root_target);
    double hi = std::max({lo * 2.0, alpha + beta + root_target, 1.0});
    int grow = 0;
    while (g_of(hi) < 0.0) {
      hi *= 2.0;
      if (++grow > 200) {
        throw ConvergenceError("zero-set projection: failed to bracket root from " + describe_point(z));
      }
    }
    a = hi;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      const double g = g_of(a);
      if (g == 0.0) {
        converged = true;
        break;
      }
      if (g > 0.0) {
        hi = a;
      } else {
        lo = a;
      }
      const double bv = b_of(a);
      const double denom = 2.0 * a - alpha;
      const double dg = 2.0 * a + (beta == 0.0 ? 0.0 : 2.0 * bv * alpha * beta / (denom * denom));
      double next = a - g / dg;
      if (!(next > lo && next < hi)) {
        next = 0.5 * (lo + hi);
      }
      const double delta = std::abs(next - a);
      a = next;
      if (delta <= 1e-15 * std::max(1.0, a) || hi - lo <= 4e-16 * std::max(1.0, hi)) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceError("zero-set projection: Newton iteration did not converge from " + describe_point(z));
    }
    b = b_of(a);
  }

  PhasePoint w = PhasePoint::zero(static_cast<unsigned>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double uw = a * u_dir[j];
    const double vw = b * v_dir[j];
    w.x[j] = (uw + vw) * inv_sqrt2;
    w.p[j] = (uw - vw) * inv_sqrt2;
  }
  return w;
}

double distance_between(const PhasePoint& a, const PhasePoint& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.x.size(); ++j) {
    s += (a.x[j] - b.x[j]) * (a.x[j] - b.x[j]) + (a.p[j] - b.p[j]) * (a.p[j] - b.p[j]);
  }
  return std::sqrt(s);
}

}  // namespace

ZeroSetProjection distance_to_branch(const ThetaContext& ctx, const PhasePoint& z, long k) {
  ctx.require_dim(z);
  if (k == 0) {
    throw std::invalid_argument("distance_to_branch: branch k must be non-zero");
  }
  const double c = 2.0 * std::numbers::pi * static_cast<double>(std::abs(k)) * ctx.hbar;
  PhasePoint w;
  if (k > 0) {
    w = project_positive_branch(z, c);
  } else {
    // (x, p) -> (x, -p) maps {x.p = -c} onto {x.p = c} isometrically.
    PhasePoint flipped = z;
    for (double& v : flipped.p) v = -v;
    w = project_positive_branch(flipped, c);
    for (double& v : w.p) v = -v;
  }
  const double target = k > 0 ? c : -c;
  const double residual = std::abs(w.x_dot_p() - target);
  if (residual > 1e-9 * std::max({1.0, c, z.norm() * z.norm()})) {
    throw ConvergenceError("zero-set projection: constraint residual " + std::to_string(residual) + " on branch " +
                           std::to_string(k) + " from " + describe_point(z));
  }
  return {distance_between(z, w), std::move(w), k};
}

ZeroSetProjection zero_set_distance(const ThetaContext& ctx, const PhasePoint& z) {
  ctx.require_dim(z);
  const double period = 2.0 * std::numbers::pi * ctx.hbar;
  const double product = z.x_dot_p();
  const double radius = z.norm();

  auto better = [](const ZeroSetProjection& a, const ZeroSetProjection& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (std::abs(a.k) != std::abs(b.k)) return std::abs(a.k) < std::abs(b.k);
    return a.k > b.k;
  };

  const long k0 = std::lround(product / period);
  ZeroSetProjection best;
  bool have = false;
  for (long k : {k0 - 1, k0, k0 + 1, -1L, 1L}) {
    if (k == 0) continue;
    auto cand = distance_to_branch(ctx, z, k);
    if (!have || better(cand, best)) {
      best = std::move(cand);
      have = true;
    }
  }

  // Moving a distance d changes x.p by at most |z| d + d^2/2, so only branches
  // inside this window can beat the current best.
  const double reach = (radius * best.distance + 0.5 * best.distance * best.distance) * (1.0 + 1e-12) + 1e-300;
  const double kmin = std::ceil((product - reach) / period);
  const double kmax = std::floor((product + reach) / period);
  if (kmax - kmin > 1e7) {
    throw ConvergenceError("zero_set_distance: candidate window too large at " + describe_point(z));
  }
  for (long k = static_cast<long>(kmin); k <= static_cast<long>(kmax); ++k) {
    if (k == 0 || k == k0 - 1 || k == k0 || k == k0 + 1 || k == 1 || k == -1) continue;
    auto cand = distance_to_branch(ctx, z, k);
    if (better(cand, best)) {
      best = std::move(cand);
    }
  }
  return best;
}

BoundsReport check_hormander_bounds(const ThetaContext& ctx, const BoundsConfig& config) {
  if (config.samples == 0 || !(config.box > 0.0)) {
    throw std::invalid_argument("check_hormander_bounds: need samples >= 1 and a positive box");
  }
  BoundsReport report;
  std::mt19937_64 rng(config.seed);
  const double half = config.box * std::sqrt(ctx.hbar);
  std::uniform_real_distribution<double> coord(-half, half);
  auto random_point = [&] {
    PhasePoint z = PhasePoint::zero(ctx.n);
    for (unsigned j = 0; j < ctx.n; ++j) z.x[j] = coord(rng);
    for (unsigned j = 0; j < ctx.n; ++j) z.p[j] = coord(rng);
    return z;
  };

  // |Theta(z)| (1 + |z|)^2 >= C dist(z, Z)
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < config.samples; ++i) {
    PhasePoint z = random_point();
    const double dist = zero_set_distance(ctx, z).distance;
    if (dist == 0.0) continue;
    const double r = 1.0 + z.norm();
    const double ratio = std::abs(theta(ctx, z)) * r * r / dist;
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.ratio_witness = z;
    }
  }
  if (!(report.min_ratio >= config.ratio_floor)) {
    report.failures.push_back("theta lower bound: ratio " + std::to_string(report.min_ratio) + " below floor at " +
                              describe_point(report.ratio_witness));
  }

  // |grad Theta(z)| |z| >= 2 on Z
  report.min_gradient_product = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < config.zero_samples; ++i) {
    PhasePoint w = zero_set_distance(ctx, random_point()).nearest;
    const double product = norm_of(theta_gradient(ctx, w)) * w.norm();
    if (product < report.min_gradient_product) {
      report.min_gradient_product = product;
      report.gradient_witness = w;
    }
  }
  if (config.zero_samples > 0 && !(report.min_gradient_product >= config.gradient_floor)) {
    report.failures.push_back("gradient bound on zero set: " + std::to_string(report.min_gradient_product) +
                              " at " + describe_point(report.gradient_witness));
  }

  // One-dimensional form: |sinc(t/2hbar)| (1 + |t|) >= C0 dist(t, Z0).
  const double period = 2.0 * std::numbers::pi * ctx.hbar;
  const double t_max = half * half * ctx.n;
  std::uniform_real_distribution<double> tdist(-t_max, t_max);
  report.min_sinc_ratio = std::numeric_limits<double>::infinity();
  report.min_near_origin_sinc = std::numeric_limits<double>::infinity();
  const double near_limit = std::numbers::pi * ctx.hbar;
  auto visit_t = [&](double t) {
    long k = std::lround(t / period);
    if (k == 0) k = t >= 0.0 ? 1 : -1;
    const double dist = std::abs(t - period * static_cast<double>(k));
    const double s = std::abs(sinc(t / (2.0 * ctx.hbar)));
    if (dist > 0.0) {
      const double ratio = s * (1.0 + std::abs(t)) / dist;
      if (ratio < report.min_sinc_ratio) {
        report.min_sinc_ratio = ratio;
        report.sinc_ratio_witness = t;
      }
    }
    if (std::abs(t) <= near_limit) {
      report.min_near_origin_sinc = std::min(report.min_near_origin_sinc, s);
    }
  };
  visit_t(near_limit);
  visit_t(-near_limit);
  for (std::uint64_t i = 0; i < config.samples; ++i) {
    visit_t(tdist(rng));
  }
  if (!(report.min_sinc_ratio > 0.0)) {
    report.failures.push_back("sinc lower bound: infimum not positive at t=" +
                              std::to_string(report.sinc_ratio_witness));
  }
  if (!(report.min_near_origin_sinc >= 2.0 / std::numbers::pi - 1e-15)) {
    report.failures.push_back("sinc near origin below 2/pi: " + std::to_string(report.min_near_origin_sinc));
  }

  report.passed = report.failures.empty();
  return report;
}

std::vector<double> cone_change_of_coordinates(const PhasePoint& z) {
  const std::size_t n = z.x.size();
  if (n == 0 || z.p.size() != n) {
    throw std::invalid_argument("cone_change_of_coordinates: malformed phase point");
  }
  const double z1 = z.x[0];
  if (!(z1 > 0.0)) {
    throw std::domain_error("cone_change_of_coordinates: requires z_1 > 0");
  }
  std::vector<double> y(2 * n);
  y[0] = z1 * z1;
  for (std::size_t i = 1; i < n; ++i) {
    y[i] = z1 * z.x[i];
    y[n - 1 + i] = z1 * z.p[i];
  }
  y[2 * n - 1] = z.x_dot_p();
  return y;
}

PhasePoint cone_change_of_coordinates_inverse(std::span<const double> y) {
  if (y.empty() || y.size() % 2 != 0) {
    throw std::invalid_argument("cone_change_of_coordinates_inverse: expected 2n coordinates");
  }
  const std::size_t n = y.size() / 2;
  if (!(y[0] > 0.0)) {
    throw std::domain_error("cone_change_of_coordinates_inverse: requires y_1 > 0");
  }
  const double root = std::sqrt(y[0]);
  PhasePoint z = PhasePoint::zero(static_cast<unsigned>(n));
  z.x[0] = root;
  double mixed = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    z.x[i] = y[i] / root;
    z.p[i] = y[n - 1 + i] / root;
    mixed += y[i] * y[n - 1 + i] / y[0];
  }
  z.p[0] = (y[2 * n - 1] - mixed) / root;
  return z;
}

}  // namespace bjcalc
