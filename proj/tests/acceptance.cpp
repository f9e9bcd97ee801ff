// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bjcalc/exp_symbols.hpp"
#include "bjcalc/grid.hpp"
#include "bjcalc/quantize.hpp"
#include "bjcalc/series.hpp"
#include "bjcalc/theta.hpp"
#include "jet_oracles.hpp"
#include "test_support.hpp"

using namespace bjcalc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome exact_identities() {
  Outcome o;
  const PolySymbol a = parse_symbol("x^2 p^2");
  if (quantize(a, Scheme::Weyl) != parse_operator("X^2 P^2 - 2 i hbar X P - 1/2 hbar^2")) o.fail("Weyl x^2 p^2");
  if (quantize(a, Scheme::BornJordan) != parse_operator("X^2 P^2 - 2 i hbar X P - 2/3 hbar^2")) o.fail("BJ x^2 p^2");
  o.detail = o.passed ? "Op_W and Op_BJ of x^2 p^2 exact" : o.detail;
  return o;
}

Outcome closed_vs_average() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (unsigned r = 0; r <= 8; ++r) {
    for (unsigned s = 0; s <= 8; ++s) {
      if (op_w_monomial(r, s) != op_w_average(r, s)) o.fail("Weyl r=" + std::to_string(r) + " s=" + std::to_string(s));
      if (op_bj_monomial(r, s) != op_bj_average(r, s)) o.fail("BJ r=" + std::to_string(r) + " s=" + std::to_string(s));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 5.0) o.fail("took " + std::to_string(secs) + " s");
  if (o.passed) o.detail = "81 monomials x 2 schemes in " + sci(secs) + " s";
  return o;
}

Outcome round_trips() {
  Outcome o;
  std::mt19937_64 rng(20160101);
  for (Scheme scheme : {Scheme::Weyl, Scheme::BornJordan}) {
    for (int k = 0; k < 200; ++k) {
      const PolySymbol a = fixtures::random_symbol(rng, 10);
      if (dequantize(quantize(a, scheme), scheme) != a) o.fail("dequantize(quantize(" + print_symbol(a) + "))");
      const NormalOperator A = fixtures::random_operator(rng, 10);
      if (quantize(dequantize(A, scheme), scheme) != A) o.fail("quantize(dequantize(" + print_operator(A) + "))");
    }
  }
  if (o.passed) o.detail = "200 symbols and 200 operators per scheme";
  return o;
}

Outcome series_oracle() {
  Outcome o;
  for (unsigned r = 0; r <= 10; ++r) {
    for (unsigned s = 0; s <= 10; ++s) {
      const PolySymbol m = PolySymbol::monomial(r, s);
      if (bj_to_weyl_series(m) != dequantize(quantize(m, Scheme::BornJordan), Scheme::Weyl)) {
        o.fail("bj_to_weyl r=" + std::to_string(r) + " s=" + std::to_string(s));
      }
      if (weyl_to_bj_series(m) != dequantize(quantize(m, Scheme::Weyl), Scheme::BornJordan)) {
        o.fail("weyl_to_bj r=" + std::to_string(r) + " s=" + std::to_string(s));
      }
    }
  }
  const std::string w = print_symbol(weyl_to_bj_poly(parse_symbol("x^2 p^2")));
  if (w != "x^2 p^2 + 1/6 hbar^2") o.fail("weyl_to_bj_poly(x^2 p^2) = " + w);
  if (o.passed) o.detail = "r,s <= 10; weyl_to_bj_poly(x^2 p^2) = " + w;
  return o;
}

Outcome series_coefficients() {
  Outcome o;
  std::vector<Rational> inv(13);
  inv[0] = Rational(1);
  for (unsigned k = 1; k <= 12; ++k) {
    Rational acc(0);
    for (unsigned j = 1; j <= k; ++j) acc += theta_series_coeff(j) * inv[k - j];
    inv[k] = -acc;
  }
  for (unsigned k = 0; k <= 12; ++k) {
    if (theta_inv_series_coeff(k) != inv[k]) o.fail("k=" + std::to_string(k));
  }
  if (theta_inv_series_coeff(1) != Rational(1, 6)) o.fail("a_1");
  if (theta_inv_series_coeff(2) != Rational(7, 360)) o.fail("a_2");
  if (o.passed) o.detail = "k <= 12, a_1 = 1/6, a_2 = 7/360";
  return o;
}

Outcome theta_numerics() {
  Outcome o;
  std::mt19937_64 rng(6);
  const ThetaContext ctx(1.0, 1);
  std::uniform_real_distribution<double> xp(-40.0, 40.0);
  std::uniform_real_distribution<double> xs(0.2, 5.0);
  double quad_err = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double x = xs(rng);
    const PhasePoint z({x}, {xp(rng) / x});
    quad_err = std::max(quad_err, std::abs(theta_quadrature(ctx, z, 16) - theta(ctx, z)));
  }
  if (quad_err > 1e-12) o.fail("quadrature error " + sci(quad_err));

  double grad_err = 0.0;
  double sym_err = 0.0;
  const ThetaContext ctx2(0.7, 2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> flat(4);
    for (auto& v : flat) v = u(rng);
    const PhasePoint z = PhasePoint::from_flat(flat);
    const auto g = theta_gradient(ctx2, z);
    for (std::size_t j = 0; j < 4; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(flat[j]));
      auto plus = flat;
      auto minus = flat;
      plus[j] += h;
      minus[j] -= h;
      const double fd =
          (theta(ctx2, PhasePoint::from_flat(plus)) - theta(ctx2, PhasePoint::from_flat(minus))) / (2 * h);
      grad_err = std::max(grad_err, std::abs(g[j] - fd) / std::max(1.0, std::abs(fd)));
    }
    const PhasePoint minus_z({-flat[0], -flat[1]}, {-flat[2], -flat[3]});
    const PhasePoint jz({flat[2], flat[3]}, {-flat[0], -flat[1]});
    sym_err = std::max({sym_err, std::abs(theta(ctx2, z) - theta(ctx2, minus_z)),
                        std::abs(theta(ctx2, z) - theta(ctx2, jz))});
  }
  if (grad_err > 1e-7) o.fail("gradient relative error " + sci(grad_err));
  if (sym_err > 1e-15) o.fail("symmetry error " + sci(sym_err));
  if (o.passed) o.detail = "quadrature " + sci(quad_err) + ", gradient " + sci(grad_err) + ", symmetry " + sci(sym_err);
  return o;
}

Outcome zero_set_geometry() {
  Outcome o;
  double dist_err = 0.0;
  double witness_err = 0.0;
  for (double hbar : {0.1, 1.0, 10.0}) {
    const ThetaContext ctx(hbar, 1);
    const double r0 = std::sqrt(4 * kPi * hbar);
    dist_err = std::max(dist_err, std::abs(zero_set_distance(ctx, PhasePoint::zero(1)).distance - r0));
    const PhasePoint w = witness_point(ctx);
    witness_err = std::max({witness_err, std::abs(theta(ctx, w)), std::abs(w.norm() * w.norm() - 4 * kPi * hbar)});
  }
  if (dist_err > 1e-10) o.fail("distance error " + sci(dist_err));
  if (witness_err > 1e-12) o.fail("witness error " + sci(witness_err));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  const ThetaContext ctx(1.0, 2);
  double min_product = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> flat(4);
    for (auto& v : flat) v = u(rng);
    const PhasePoint w = zero_set_distance(ctx, PhasePoint::from_flat(flat)).nearest;
    const auto g = theta_gradient(ctx, w);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    min_product = std::min(min_product, std::sqrt(gn) * w.norm());
  }
  if (min_product < 2.0 - 1e-9) o.fail("min |grad Theta| |z| = " + std::to_string(min_product));
  if (o.passed) {
    o.detail = "distance " + sci(dist_err) + ", witness " + sci(witness_err) + ", min |grad||z| " +
               std::to_string(min_product);
  }
  return o;
}

Outcome kernel_threshold() {
  Outcome o;
  for (double hbar : {0.1, 1.0, 10.0}) {
    const ThetaContext ctx(hbar, 1);
    const double r0 = threshold_radius(ctx);
    if (kernel_witness(ctx, 0.99 * r0)) o.fail("witness below threshold");
    const auto w = kernel_witness(ctx, r0);
    if (!w) {
      o.fail("no witness at threshold");
      continue;
    }
    const ExpSymbol image = bj_to_weyl_exp(ctx, ExpSymbol(*w));
    for (const auto& t : image.terms()) {
      if (t.poly.max_abs_coeff() > 1e-14) o.fail("witness image coefficient " + sci(t.poly.max_abs_coeff()));
    }
    for (double ratio : {0.5, 0.9, 0.99, 0.999, 1.0, 1.001, 1.1, 1.2}) {
      const GridSymbol g = gaussian_bump(ctx, 1.25 * r0, 64, ratio * r0);
      bool raised = false;
      try {
        grid_inverse(grid_forward(g));
      } catch (const ThresholdViolation&) {
        raised = true;
      }
      if (raised != (ratio * r0 >= r0)) o.fail("grid_inverse at ratio " + std::to_string(ratio));
    }
  }
  if (o.passed) o.detail = "witness exactly at r = sqrt(4 pi hbar); grid_inverse refuses r >= threshold";
  return o;
}

double symbol_distance(const ExpSymbol& a, const ExpSymbol& b) {
  ExpSymbol diff = a;
  for (const auto& t : b.terms()) diff.add(ExpPolyTerm{t.z0, t.poly * Complex(-1.0)});
  double m = 0.0;
  for (const auto& t : diff.terms()) m = std::max(m, t.poly.max_abs_coeff());
  return m;
}

Outcome constructive_division() {
  Outcome o;
  std::mt19937_64 rng(9);
  double worst = 0.0;
  int on_zero = 0;
  for (unsigned n : {1U, 2U}) {
    const ThetaContext ctx(0.8, n);
    for (int k = 0; k < 25; ++k) {
      const bool zero = k % 2 == 1;
      const PhasePoint z0 = zero ? fixtures::random_zero(rng, ctx, k % 4 == 1 ? 1 : -2) : fixtures::random_point(rng, n, 3.0);
      on_zero += zero;
      const ExpSymbol a(solve_heisenberg_bj(ctx, z0));
      const ExpSymbol b(ExpPolyTerm{z0, PhasePolynomial::constant(n, 1.0)});
      worst = std::max(worst, symbol_distance(bj_to_weyl_exp(ctx, a), b));
    }
  }
  if (worst > 1e-9) o.fail("Heisenberg round-trip residual " + sci(worst));

  double pairing = 0.0;
  for (unsigned n : {1U, 2U}) {
    const ThetaContext ctx(1.1, n);
    for (int k = 0; k < 40; ++k) {
      const PhasePoint z0 = k % 2 ? fixtures::random_zero(rng, ctx, 1 + k % 3) : fixtures::random_point(rng, n, 3.0);
      if (std::abs(z0.x_dot_p()) < 0.05) continue;
      const DeltaJet jet = fixtures::random_jet(rng, z0, 3);
      const PhasePolynomial phi_at = fixtures::shift(fixtures::random_poly(rng, n, 4), z0);
      const Complex lhs = fixtures::pair(multiply_theta_jet(ctx, jet), phi_at);
      const Complex rhs =
          fixtures::pair(jet, fixtures::theta_taylor_oracle(ctx, z0, 3).truncated_product(phi_at, 3));
      pairing = std::max(pairing, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
  }
  if (pairing > 1e-10) o.fail("pairing error " + sci(pairing));
  if (o.passed) {
    o.detail = "50 points (" + std::to_string(on_zero) + " on Z), residual " + sci(worst) + ", pairing " + sci(pairing);
  }
  return o;
}

Outcome grid_round_trip() {
  Outcome o;
  const ThetaContext ctx(1.0, 1);
  const double r0 = threshold_radius(ctx);
  const GridSymbol a = gaussian_bump(ctx, 1.25 * r0, 128, 0.9 * r0);
  const GridSymbol back = grid_inverse(grid_forward(a));
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    num = std::max(num, std::abs(back.samples[k] - a.samples[k]));
    den = std::max(den, std::abs(a.samples[k]));
  }
  if (num / den > 1e-12) o.fail("max relative error " + sci(num / den));
  std::string conds;
  double previous = 0.0;
  for (double ratio : {0.3, 0.6, 0.9, 0.99}) {
    const double c = condition_number(gaussian_bump(ctx, 1.25 * r0, 128, ratio * r0));
    if (c < previous) o.fail("condition number decreases at ratio " + std::to_string(ratio));
    previous = c;
    conds += (conds.empty() ? "" : " ") + sci(c);
  }
  if (o.passed) o.detail = "max_rel_err " + sci(num / den) + "; condition numbers " + conds;
  return o;
}

std::string quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

Outcome cli_golden() {
  Outcome o;
  std::ifstream manifest(std::string(BJCALC_GOLDEN_DIR) + "/cases.tsv");
  if (!manifest) {
    o.fail("missing golden manifest");
    return o;
  }
  std::string line;
  int cases = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    if (fields.size() < 2) continue;
    std::string cmd = quote(BJCALC_CLI_PATH);
    for (std::size_t k = 2; k < fields.size(); ++k) cmd += " " + quote(fields[k]);
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
      o.fail("cannot run " + fields[0]);
      continue;
    }
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream expected_file(std::string(BJCALC_GOLDEN_DIR) + "/" + fields[0] + ".out", std::ios::binary);
    const std::string expected((std::istreambuf_iterator<char>(expected_file)), std::istreambuf_iterator<char>());
    if (out != expected) o.fail(fields[0] + ": output differs");
    if (code != std::stoi(fields[1])) o.fail(fields[0] + ": exit " + std::to_string(code) + ", expected " + fields[1]);
    ++cases;
  }
  if (o.passed) o.detail = std::to_string(cases) + " invocations byte-identical, exit codes 0/2/3/4 honored";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact quantization identities", exact_identities},
      {"closed formulas equal permutation averages", closed_vs_average},
      {"quantize/dequantize round trips", round_trips},
      {"scheme-conversion series vs composite oracle", series_oracle},
      {"t/sin(t) coefficients vs series reciprocal", series_coefficients},
      {"Theta quadrature, gradient, symmetries", theta_numerics},
      {"zero-set geometry", zero_set_geometry},
      {"kernel and injectivity threshold", kernel_threshold},
      {"constructive division and jet pairing", constructive_division},
      {"grid round trip and conditioning", grid_round_trip},
      {"CLI golden files and exit codes", cli_golden},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << k + 1 << ": " << criteria[k].first << " ("
              << o.detail << ")\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
