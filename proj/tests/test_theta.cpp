#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bjcalc/theta.hpp"

using namespace bjcalc;

namespace {

constexpr double kPi = std::numbers::pi;

PhasePoint point1(double x, double p) { return PhasePoint({x}, {p}); }

PhasePoint random_point(std::mt19937_64& rng, unsigned n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> x(n);
  std::vector<double> p(n);
  for (auto& v : x) v = u(rng);
  for (auto& v : p) v = u(rng);
  return PhasePoint(x, p);
}

// Distance from (x, p) to the hyperbola x p = c by dense sampling of (t, c/t)
// followed by golden-section refinement around the best sample.
double hyperbola_distance(double x, double p, double c) {
  auto dist = [&](double t) { return std::hypot(x - t, p - c / t); };
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  for (int sign : {-1, 1}) {
    for (int k = -4000; k <= 4000; ++k) {
      const double t = sign * std::pow(10.0, k / 1000.0);
      const double d = dist(t);
      if (d < best) {
        best = d;
        best_t = t;
      }
    }
  }
  double lo = best_t * std::pow(10.0, -0.002);
  double hi = best_t * std::pow(10.0, 0.002);
  if (lo > hi) std::swap(lo, hi);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double a = hi - g * (hi - lo);
    const double b = lo + g * (hi - lo);
    if (dist(a) < dist(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return std::min(best, dist(0.5 * (lo + hi)));
}

}  // namespace

TEST(Sinc, SeriesBranchIsContinuous) {
  for (double t : {1e-5, 5e-5, 9.9e-5, 1.01e-4, 2e-4, 1e-3}) {
    EXPECT_NEAR(sinc(t), static_cast<double>(std::sin(static_cast<long double>(t)) / t), 0x1p-52) << t;
    const double h = 1e-6;
    EXPECT_NEAR(sinc_prime(t), (std::sin(t + h) / (t + h) - std::sin(t - h) / (t - h)) / (2 * h), 1e-9) << t;
  }
  EXPECT_EQ(sinc(0.0), 1.0);
  EXPECT_EQ(sinc_prime(0.0), 0.0);
  EXPECT_NEAR(sinc(kPi), 0.0, 1e-16);
  EXPECT_NEAR(sinc_prime(kPi), -1.0 / kPi, 1e-15);
}

TEST(Theta, Values) {
  const ThetaContext ctx(1.0, 1);
  EXPECT_EQ(theta(ctx, point1(0, 0)), 1.0);
  EXPECT_NEAR(theta(ctx, point1(1.0, kPi)), 2.0 / kPi, 1e-15);
  EXPECT_NEAR(theta(ctx, point1(2.0, kPi)), 0.0, 1e-15);
  EXPECT_THROW(ThetaContext(0.0, 1), std::invalid_argument);
  EXPECT_THROW(ThetaContext(1.0, 0), std::invalid_argument);
  EXPECT_THROW(theta(ThetaContext(1.0, 2), point1(0, 0)), std::invalid_argument);
}

TEST(Theta, QuadratureIdentity) {
  std::mt19937_64 rng(41);
  for (double hbar : {0.1, 1.0, 10.0}) {
    const ThetaContext ctx(hbar, 1);
    std::uniform_real_distribution<double> xp(-40.0 * hbar, 40.0 * hbar);
    std::uniform_real_distribution<double> x(0.2, 5.0);
    for (int k = 0; k < 2000; ++k) {
      const double xv = x(rng);
      const PhasePoint z = point1(xv, xp(rng) / xv);
      EXPECT_NEAR(theta_quadrature(ctx, z, 16), theta(ctx, z), 1e-12);
    }
  }
}

TEST(Theta, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(42);
  for (unsigned n : {1U, 2U, 3U}) {
    const ThetaContext ctx(0.7, n);
    for (int k = 0; k < 200; ++k) {
      const PhasePoint z = random_point(rng, n, 3.0);
      const auto g = theta_gradient(ctx, z);
      auto flat = z.flat();
      for (std::size_t j = 0; j < flat.size(); ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(flat[j]));
        auto plus = flat;
        auto minus = flat;
        plus[j] += h;
        minus[j] -= h;
        const double fd =
            (theta(ctx, PhasePoint::from_flat(plus)) - theta(ctx, PhasePoint::from_flat(minus))) / (2 * h);
        EXPECT_NEAR(g[j], fd, 1e-7 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(Theta, Symmetries) {
  std::mt19937_64 rng(43);
  const ThetaContext ctx(1.3, 2);
  for (int k = 0; k < 500; ++k) {
    const PhasePoint z = random_point(rng, 2, 4.0);
    const PhasePoint minus_z({-z.x[0], -z.x[1]}, {-z.p[0], -z.p[1]});
    const PhasePoint jz({z.p[0], z.p[1]}, {-z.x[0], -z.x[1]});
    EXPECT_EQ(theta(ctx, z), theta(ctx, minus_z));
    EXPECT_NEAR(theta(ctx, z), theta(ctx, jz), 1e-15);
  }
}

TEST(ZeroSet, ThresholdAndWitness) {
  for (double hbar : {0.1, 1.0, 10.0}) {
    for (unsigned n : {1U, 2U, 4U}) {
      const ThetaContext ctx(hbar, n);
      const double r0 = std::sqrt(4 * kPi * hbar);
      EXPECT_NEAR(threshold_radius(ctx), r0, 1e-15 * r0);
      EXPECT_NEAR(zero_set_distance(ctx, PhasePoint::zero(n)).distance, r0, 1e-10);
      const PhasePoint w = witness_point(ctx);
      EXPECT_NEAR(theta(ctx, w), 0.0, 1e-12);
      EXPECT_NEAR(w.norm() * w.norm(), 4 * kPi * hbar, 1e-12 * std::max(1.0, 4 * kPi * hbar));
      EXPECT_NEAR(w.x_dot_p(), 2 * kPi * hbar, 1e-12 * hbar * 10);
    }
  }
}

TEST(ZeroSet, MatchesHyperbolaSamplingOracle) {
  std::mt19937_64 rng(44);
  const ThetaContext ctx(1.0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const PhasePoint z = random_point(rng, 1, 6.0);
    const auto proj = zero_set_distance(ctx, z);
    double oracle = std::numeric_limits<double>::infinity();
    for (long k = -12; k <= 12; ++k) {
      if (k != 0) oracle = std::min(oracle, hyperbola_distance(z.x[0], z.p[0], 2 * kPi * k));
    }
    EXPECT_NEAR(proj.distance, oracle, 1e-9) << z.x[0] << "," << z.p[0];
    EXPECT_NEAR(proj.nearest.x_dot_p(), 2 * kPi * proj.k, 1e-9);
  }
}

TEST(ZeroSet, ProjectionIsStationaryInHigherDimension) {
  std::mt19937_64 rng(45);
  for (unsigned n : {2U, 3U}) {
    const ThetaContext ctx(0.5, n);
    for (int trial = 0; trial < 100; ++trial) {
      const PhasePoint z = random_point(rng, n, 4.0);
      const auto proj = zero_set_distance(ctx, z);
      const PhasePoint& w = proj.nearest;
      EXPECT_NEAR(w.x_dot_p(), 2 * kPi * ctx.hbar * proj.k, 1e-9);
      // z - w is normal to the surface: parallel to (p_w, x_w).
      std::vector<double> d;
      std::vector<double> normal;
      for (unsigned j = 0; j < n; ++j) {
        d.push_back(z.x[j] - w.x[j]);
        normal.push_back(w.p[j]);
      }
      for (unsigned j = 0; j < n; ++j) {
        d.push_back(z.p[j] - w.p[j]);
        normal.push_back(w.x[j]);
      }
      double dn = 0.0;
      double nn = 0.0;
      double dd = 0.0;
      for (std::size_t j = 0; j < d.size(); ++j) {
        dn += d[j] * normal[j];
        nn += normal[j] * normal[j];
        dd += d[j] * d[j];
      }
      if (dd > 1e-12) {
        EXPECT_NEAR(std::abs(dn), std::sqrt(dd * nn), 1e-8 * std::sqrt(dd * nn));
      }
      EXPECT_NEAR(std::sqrt(dd), proj.distance, 1e-12);
      // No sampled zero is closer.
      std::normal_distribution<double> g(0.0, 1.0);
      for (int s = 0; s < 200; ++s) {
        std::vector<double> x(n);
        std::vector<double> p(n);
        for (unsigned j = 0; j < n; ++j) {
          x[j] = w.x[j] + 0.3 * g(rng);
          p[j] = w.p[j] + 0.3 * g(rng);
        }
        double xp = 0.0;
        for (unsigned j = 0; j < n; ++j) xp += x[j] * p[j];
        if (xp * proj.k <= 0.0) continue;
        const double scale = std::sqrt(2 * kPi * ctx.hbar * proj.k / xp);
        for (unsigned j = 0; j < n; ++j) {
          x[j] *= scale;
          p[j] *= scale;
        }
        double dist2 = 0.0;
        for (unsigned j = 0; j < n; ++j) {
          dist2 += (z.x[j] - x[j]) * (z.x[j] - x[j]) + (z.p[j] - p[j]) * (z.p[j] - p[j]);
        }
        EXPECT_GE(std::sqrt(dist2), proj.distance - 1e-9);
      }
    }
  }
}

TEST(ZeroSet, TieBreakPrefersPositiveBranch) {
  const ThetaContext ctx(1.0, 1);
  const auto proj = zero_set_distance(ctx, point1(0, 0));
  EXPECT_EQ(proj.k, 1);
  EXPECT_THROW(distance_to_branch(ctx, point1(0, 0), 0), std::invalid_argument);
  EXPECT_EQ(distance_to_branch(ctx, point1(1, -1), -1).k, -1);
}

TEST(ZeroSet, GradientBoundOnZeros) {
  std::mt19937_64 rng(46);
  for (unsigned n : {1U, 2U}) {
    const ThetaContext ctx(1.0, n);
    for (int trial = 0; trial < 1000; ++trial) {
      const PhasePoint w = zero_set_distance(ctx, random_point(rng, n, 8.0)).nearest;
      const auto g = theta_gradient(ctx, w);
      double gn = 0.0;
      for (double v : g) gn += v * v;
      EXPECT_GE(std::sqrt(gn) * w.norm(), 2.0 - 1e-9);
    }
  }
}

TEST(Bounds, DefaultConfigurationPasses) {
  const ThetaContext ctx(1.0, 1);
  const BoundsReport report = check_hormander_bounds(ctx, BoundsConfig{});
  EXPECT_TRUE(report.passed);
  EXPECT_TRUE(report.failures.empty());
  EXPECT_GE(report.min_gradient_product, 2.0 - 1e-9);
  EXPECT_GE(report.min_near_origin_sinc, 2.0 / kPi - 1e-15);
}

TEST(Bounds, ImpossibleFloorFailsWithWitness) {
  const ThetaContext ctx(1.0, 1);
  BoundsConfig cfg;
  cfg.samples = 1000;
  cfg.zero_samples = 100;
  cfg.ratio_floor = 1e6;
  const BoundsReport report = check_hormander_bounds(ctx, cfg);
  EXPECT_FALSE(report.passed);
  EXPECT_FALSE(report.failures.empty());
  EXPECT_EQ(report.ratio_witness.dim(), 1U);
}

TEST(ConeCoordinates, RoundTrip) {
  std::mt19937_64 rng(47);
  for (unsigned n : {1U, 2U, 3U}) {
    for (int trial = 0; trial < 100; ++trial) {
      PhasePoint z = random_point(rng, n, 3.0);
      z.x[0] = std::abs(z.x[0]) + 0.1;
      const auto y = cone_change_of_coordinates(z);
      ASSERT_EQ(y.size(), 2 * n);
      EXPECT_NEAR(y[0], z.x[0] * z.x[0], 1e-14);
      EXPECT_NEAR(y[2 * n - 1], z.x_dot_p(), 1e-13);
      const PhasePoint back = cone_change_of_coordinates_inverse(y);
      const auto a = z.flat();
      const auto b = back.flat();
      for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-11);
    }
  }
  EXPECT_THROW(cone_change_of_coordinates(point1(0.0, 1.0)), std::domain_error);
  EXPECT_THROW(cone_change_of_coordinates(point1(-1.0, 1.0)), std::domain_error);
  const std::vector<double> bad{-1.0, 2.0};
  EXPECT_THROW(cone_change_of_coordinates_inverse(bad), std::domain_error);
}
