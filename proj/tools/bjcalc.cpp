// bjcalc: Born-Jordan and Weyl quantization calculator.
//
// Exit codes: 0 success, 1 internal error, 2 parse or usage error,
// 3 verification failure, 4 threshold violation.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bjcalc/exp_symbols.hpp"
#include "bjcalc/grid.hpp"
#include "bjcalc/parse_error.hpp"
#include "bjcalc/quantize.hpp"
#include "bjcalc/rational.hpp"
#include "bjcalc/theta.hpp"

namespace {

using namespace bjcalc;

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;
constexpr int kExitThreshold = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string hbar_text = "1";
  unsigned dim = 1;
  std::string output = "text";
  int precision = 12;

  bool records() const { return output == "records"; }
};

using Record = std::pair<std::string, std::string>;

// Text mode prints `text`; records mode prints key=value lines.
void emit(const CliConfig& cfg, const std::vector<std::string>& text, const std::vector<Record>& records) {
  if (cfg.records()) {
    for (const auto& [k, v] : records) std::cout << k << '=' << v << '\n';
  } else {
    for (const auto& line : text) std::cout << line << '\n';
  }
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double parse_real(const std::string& text, const std::string& what) {
  if (text.find('/') != std::string::npos) {
    try {
      return Rational::parse(text).to_double();
    } catch (const std::exception&) {
      throw UsageError("invalid " + what + " '" + text + "'");
    }
  }
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || !std::isfinite(v)) {
    throw UsageError("invalid " + what + " '" + text + "'");
  }
  return v;
}

ThetaContext context(const CliConfig& cfg) {
  const double hbar = parse_real(cfg.hbar_text, "hbar");
  if (!(hbar > 0.0)) {
    throw UsageError("hbar must be positive");
  }
  if (cfg.dim == 0) {
    throw UsageError("dim must be at least 1");
  }
  return ThetaContext(hbar, cfg.dim);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, what));
  if (text.empty() || text.back() == ',') {
    throw UsageError("invalid " + what + " '" + text + "'");
  }
  return out;
}

PhasePoint parse_point(const ThetaContext& ctx, const std::string& text, const std::string& what) {
  const auto values = parse_list(text, what);
  if (values.size() != 2 * ctx.n) {
    throw UsageError(what + " needs " + std::to_string(2 * ctx.n) + " comma-separated values, got " +
                     std::to_string(values.size()));
  }
  return PhasePoint::from_flat(values);
}

std::string join(const std::vector<double>& values, int precision) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ",";
    out += format_real(values[k], precision);
  }
  return out;
}

std::string bracket(const PhasePoint& z, int precision) { return "[" + join(z.flat(), precision) + "]"; }

Scheme parse_scheme(const std::string& s) { return s == "weyl" ? Scheme::Weyl : Scheme::BornJordan; }

double resolve_radius(const ThetaContext& ctx, const std::optional<double>& r, const std::optional<double>& ratio) {
  if (r && ratio) {
    throw UsageError("give either --r or --r-ratio, not both");
  }
  if (!r && !ratio) {
    throw UsageError("one of --r or --r-ratio is required");
  }
  const double value = r ? *r : *ratio * threshold_radius(ctx);
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw UsageError("radius must be non-negative");
  }
  return value;
}

struct GridParams {
  std::optional<double> r;
  std::optional<double> r_ratio;
  unsigned n = 128;
  std::optional<double> half_width;
};

GridSymbol fixture(const ThetaContext& ctx, const GridParams& gp) {
  if (ctx.n != 1) {
    throw UsageError("grid commands require --dim 1");
  }
  const double r = resolve_radius(ctx, gp.r, gp.r_ratio);
  if (!(r > 0.0)) {
    throw UsageError("grid support radius must be positive");
  }
  const double half_width = gp.half_width.value_or(std::max(1.25 * threshold_radius(ctx), r));
  try {
    return gaussian_bump(ctx, half_width, gp.n, r);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

GridSymbol read_grid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open '" + path + "'");
  }
  try {
    return read_grid_binary(in);
  } catch (const GridFormatError& e) {
    throw UsageError(e.what());
  }
}

void write_grid_file(const GridSymbol& g, const std::string& path, const std::string& format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw UsageError("cannot write '" + path + "'");
  }
  if (format == "csv") {
    write_grid_csv(g, out);
  } else {
    write_grid_binary(g, out);
  }
}

double max_rel_error(const GridSymbol& a, const GridSymbol& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    num = std::max(num, std::abs(a.samples[k] - b.samples[k]));
    den = std::max(den, std::abs(a.samples[k]));
  }
  return den == 0.0 ? num : num / den;
}

std::string complex_text(std::complex<double> v, int precision) {
  return format_phase_polynomial(PhasePolynomial::constant(1, v), precision);
}

}  // namespace

int main(int argc, char** argv) {
  CliConfig cfg;
  CLI::App app{"Born-Jordan and Weyl quantization calculator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--hbar", cfg.hbar_text, "Numeric hbar, decimal or p/q (exact commands keep hbar symbolic)")
      ->envname("BJCALC_HBAR");
  app.add_option("--dim", cfg.dim, "Degrees of freedom n")->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "Output mode")->check(CLI::IsMember({"text", "records"}));
  app.add_option("--precision", cfg.precision, "Displayed decimals")->check(CLI::Range(0, 17));

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // quantize / dequantize / convert
  std::string scheme = "weyl";
  std::string expr;
  std::string from_scheme;
  std::string to_scheme;
  auto* quantize_cmd = sub(&app, "quantize", "Normal-ordered operator of a polynomial symbol");
  quantize_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"weyl", "bj"}));
  quantize_cmd->add_option("symbol", expr)->required();
  auto* dequantize_cmd = sub(&app, "dequantize", "Symbol of a polynomial operator");
  dequantize_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"weyl", "bj"}));
  dequantize_cmd->add_option("operator", expr)->required();
  auto* convert_cmd = sub(&app, "convert", "Convert a symbol between schemes");
  convert_cmd->add_option("--from", from_scheme)->required()->check(CLI::IsMember({"weyl", "bj"}));
  convert_cmd->add_option("--to", to_scheme)->required()->check(CLI::IsMember({"weyl", "bj"}));
  convert_cmd->add_option("symbol", expr)->required();

  // theta
  std::string z_text;
  bool inverse = false;
  BoundsConfig bounds;
  auto* theta_cmd = sub(&app, "theta", "Cohen kernel Theta(z) = sinc(x.p / 2 hbar)");
  theta_cmd->require_subcommand(1);
  auto* theta_eval = sub(theta_cmd, "eval", "Theta(z)");
  theta_eval->add_option("--z", z_text, "Phase-space point x1,..,xn,p1,..,pn")->required();
  auto* theta_grad = sub(theta_cmd, "grad", "Gradient of Theta");
  theta_grad->add_option("--z", z_text, "Phase-space point x1,..,xn,p1,..,pn")->required();
  auto* theta_dist = sub(theta_cmd, "dist", "Distance to the zero set of Theta");
  theta_dist->add_option("--z", z_text, "Phase-space point x1,..,xn,p1,..,pn")->required();
  auto* theta_bounds = sub(theta_cmd, "bounds", "Sampling check of the lower bounds on |Theta| and |grad Theta|");
  theta_bounds->add_option("--box", bounds.box, "Half-width in units of sqrt(hbar)");
  theta_bounds->add_option("--samples", bounds.samples);
  theta_bounds->add_option("--zero-samples", bounds.zero_samples, "Sampled points on the zero set");
  theta_bounds->add_option("--seed", bounds.seed, "Sampler seed");
  theta_bounds->add_option("--ratio-floor", bounds.ratio_floor);
  theta_bounds->add_option("--gradient-floor", bounds.gradient_floor);
  auto* theta_coords = sub(theta_cmd, "coords", "Cone change of coordinates");
  theta_coords->add_option("--z", z_text, "Phase-space point x1,..,xn,p1,..,pn")->required();
  theta_coords->add_flag("--inverse", inverse);

  // exponential symbols
  std::string z0_text;
  std::optional<unsigned> max_order;
  auto* heisenberg_cmd = sub(&app, "heisenberg", "Born-Jordan symbol of the Heisenberg operator T(z0)");
  heisenberg_cmd->add_option("--z0", z0_text, "Translation point x1,..,xn,p1,..,pn")->required();
  heisenberg_cmd->add_option("--max-order", max_order, "Use general jet division at this order");
  std::optional<double> r_value;
  std::optional<double> r_ratio;
  auto* witness_cmd = sub(&app, "kernel-witness", "Nonzero symbol with zero Weyl image, if r >= sqrt(4 pi hbar)");
  witness_cmd->add_option("--r", r_value, "Support radius");
  witness_cmd->add_option("--r-ratio", r_ratio, "r in units of sqrt(4 pi hbar)");

  // grid
  GridParams gp;
  std::string in_path;
  std::string out_path;
  std::string format = "bin";
  bool export_forward = false;
  auto add_grid_params = [&](CLI::App* c) {
    c->add_option("--r", gp.r, "Support radius");
    c->add_option("--r-ratio", gp.r_ratio, "r in units of sqrt(4 pi hbar)");
    c->add_option("--N", gp.n, "Grid resolution")->check(CLI::PositiveNumber);
    c->add_option("--L", gp.half_width, "Grid half-width");
  };
  auto* grid_cmd = sub(&app, "grid", "Sampled covariant symbols on [-L, L]^2");
  grid_cmd->require_subcommand(1);
  auto* grid_roundtrip = sub(grid_cmd, "roundtrip", "inverse(forward(a)) on the Gaussian fixture");
  add_grid_params(grid_roundtrip);
  auto* grid_cond = sub(grid_cmd, "cond", "Condition number max 1/|Theta| on the support");
  add_grid_params(grid_cond);
  auto* grid_export = sub(grid_cmd, "export", "Write the Gaussian fixture");
  add_grid_params(grid_export);
  grid_export->add_option("--out", out_path, "Output file")->required();
  grid_export->add_option("--format", format, "Output format")->check(CLI::IsMember({"bin", "csv"}));
  grid_export->add_flag("--forward", export_forward, "Write Theta times the fixture");
  auto* grid_forward_cmd = sub(grid_cmd, "forward", "Multiply a grid file by Theta");
  auto* grid_inverse_cmd = sub(grid_cmd, "inverse", "Divide a grid file by Theta");
  for (auto* c : {grid_forward_cmd, grid_inverse_cmd}) {
    c->add_option("--in", in_path, "Input grid file (binary)")->required();
    c->add_option("--out", out_path, "Output file")->required();
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"bin", "csv"}));
  }
  auto* grid_synth = sub(grid_cmd, "synthesize", "Symbol value a(z) from a grid file");
  grid_synth->add_option("--in", in_path, "Input grid file (binary)")->required();
  grid_synth->add_option("--z", z_text, "Phase-space point x1,..,xn,p1,..,pn")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const int p = cfg.precision;
    if (quantize_cmd->parsed()) {
      const auto op = quantize(parse_symbol(expr), parse_scheme(scheme));
      emit(cfg, {print_operator(op)}, {{"scheme", scheme}, {"operator", print_operator(op)}});
    } else if (dequantize_cmd->parsed()) {
      const auto a = dequantize(parse_operator(expr), parse_scheme(scheme));
      emit(cfg, {print_symbol(a)}, {{"scheme", scheme}, {"symbol", print_symbol(a)}});
    } else if (convert_cmd->parsed()) {
      PolySymbol a = parse_symbol(expr);
      if (from_scheme == "weyl" && to_scheme == "bj") {
        a = weyl_to_bj_poly(a);
      } else if (from_scheme == "bj" && to_scheme == "weyl") {
        a = bj_to_weyl_poly(a);
      }
      emit(cfg, {print_symbol(a)}, {{"from", from_scheme}, {"to", to_scheme}, {"symbol", print_symbol(a)}});
    } else if (theta_eval->parsed()) {
      const auto ctx = context(cfg);
      const double v = theta(ctx, parse_point(ctx, z_text, "--z"));
      emit(cfg, {format_real(v, p)}, {{"theta", format_real(v, p)}});
    } else if (theta_grad->parsed()) {
      const auto ctx = context(cfg);
      const auto g = theta_gradient(ctx, parse_point(ctx, z_text, "--z"));
      emit(cfg, {join(g, p)}, {{"gradient", join(g, p)}});
    } else if (theta_dist->parsed()) {
      const auto ctx = context(cfg);
      const auto proj = zero_set_distance(ctx, parse_point(ctx, z_text, "--z"));
      emit(cfg, {format_real(proj.distance, p)},
           {{"distance", format_real(proj.distance, p)},
            {"k", std::to_string(proj.k)},
            {"nearest", bracket(proj.nearest, p)}});
    } else if (theta_bounds->parsed()) {
      const auto ctx = context(cfg);
      if (!(bounds.box > 0.0) || bounds.samples == 0 || bounds.zero_samples == 0) {
        throw UsageError("--box, --samples and --zero-samples must be positive");
      }
      const auto report = check_hormander_bounds(ctx, bounds);
      const std::string status = report.passed ? "PASS" : "FAIL";
      const std::vector<Record> records{
          {"status", status},
          {"min_ratio", sci(report.min_ratio)},
          {"ratio_witness", bracket(report.ratio_witness, p)},
          {"min_gradient_product", format_real(report.min_gradient_product, p)},
          {"gradient_witness", bracket(report.gradient_witness, p)},
          {"min_sinc_ratio", sci(report.min_sinc_ratio)},
          {"sinc_ratio_witness", format_real(report.sinc_ratio_witness, p)},
          {"min_near_origin_sinc", format_real(report.min_near_origin_sinc, p)}};
      std::vector<std::string> text{"bounds: " + status};
      for (std::size_t k = 1; k < records.size(); ++k) text.push_back(records[k].first + " " + records[k].second);
      for (const auto& f : report.failures) text.push_back("failure: " + f);
      std::vector<Record> all = records;
      for (const auto& f : report.failures) all.emplace_back("failure", f);
      emit(cfg, text, all);
      if (!report.passed) return kExitVerification;
    } else if (theta_coords->parsed()) {
      const auto ctx = context(cfg);
      const auto values = parse_list(z_text, "--z");
      if (values.size() != 2 * ctx.n) {
        throw UsageError("--z needs " + std::to_string(2 * ctx.n) + " comma-separated values");
      }
      std::vector<double> out;
      try {
        out = inverse ? cone_change_of_coordinates_inverse(values).flat()
                      : cone_change_of_coordinates(PhasePoint::from_flat(values));
      } catch (const std::domain_error& e) {
        throw UsageError(e.what());
      }
      emit(cfg, {join(out, p)}, {{inverse ? "z" : "y", join(out, p)}});
    } else if (heisenberg_cmd->parsed()) {
      const auto ctx = context(cfg);
      const PhasePoint z0 = parse_point(ctx, z0_text, "--z0");
      ExpSymbol a;
      if (max_order) {
        const ExpSymbol b(ExpPolyTerm{z0, PhasePolynomial::constant(ctx.n, 1.0)});
        DivisionOptions options;
        options.max_order = *max_order;
        a = weyl_to_bj_exp(ctx, b, options);
      } else {
        a.add(solve_heisenberg_bj(ctx, z0));
      }
      const std::string text = format_exp_symbol(a, p);
      emit(cfg, {text}, {{"z0", bracket(z0, p)}, {"theta_z0", format_real(theta(ctx, z0), p)}, {"symbol", text}});
    } else if (witness_cmd->parsed()) {
      const auto ctx = context(cfg);
      const double r = resolve_radius(ctx, r_value, r_ratio);
      const auto w = kernel_witness(ctx, r);
      const std::string text = w ? format_exp_term(*w, p) : "none";
      std::vector<Record> records{{"r", format_real(r, p)},
                                  {"threshold", format_real(threshold_radius(ctx), p)},
                                  {"witness", text}};
      if (w) records.emplace_back("witness_norm", format_real(w->z0.norm(), p));
      emit(cfg, {text}, records);
    } else if (grid_roundtrip->parsed()) {
      const auto ctx = context(cfg);
      const GridSymbol a = fixture(ctx, gp);
      const GridSymbol back = grid_inverse(grid_forward(a));
      const double err = max_rel_error(back, a);
      const double cond = condition_number(a);
      const bool ok = err <= 1e-12;
      emit(cfg, {ok ? "max_rel_err < 1e-12" : "max_rel_err = " + sci(err), "condition_number " + format_real(cond, p)},
           {{"status", ok ? "PASS" : "FAIL"},
            {"max_rel_err", sci(err)},
            {"condition_number", format_real(cond, p)},
            {"N", std::to_string(a.resolution)},
            {"L", format_real(a.half_width, p)},
            {"r", format_real(a.support_radius, p)}});
      if (!ok) return kExitVerification;
    } else if (grid_cond->parsed()) {
      const auto ctx = context(cfg);
      const double cond = condition_number(fixture(ctx, gp));
      emit(cfg, {format_real(cond, p)}, {{"condition_number", format_real(cond, p)}});
    } else if (grid_export->parsed()) {
      const auto ctx = context(cfg);
      GridSymbol a = fixture(ctx, gp);
      if (export_forward) a = grid_forward(a);
      write_grid_file(a, out_path, format);
      emit(cfg, {"wrote " + out_path}, {{"path", out_path}, {"N", std::to_string(a.resolution)}});
    } else if (grid_forward_cmd->parsed() || grid_inverse_cmd->parsed()) {
      const GridSymbol in = read_grid_file(in_path);
      const GridSymbol out = grid_forward_cmd->parsed() ? grid_forward(in) : grid_inverse(in);
      write_grid_file(out, out_path, format);
      emit(cfg, {"wrote " + out_path}, {{"path", out_path}, {"N", std::to_string(out.resolution)}});
    } else if (grid_synth->parsed()) {
      const GridSymbol g = read_grid_file(in_path);
      const PhasePoint z = parse_point(g.ctx, z_text, "--z");
      const auto v = synthesize(g, std::span<const PhasePoint>(&z, 1));
      emit(cfg, {complex_text(v[0], p)},
           {{"re", format_real(v[0].real(), p)}, {"im", format_real(v[0].imag(), p)}});
    }
  } catch (const ParseError& e) {
    std::cerr << "error: parse error at " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ThresholdViolation& e) {
    std::cerr << "error: threshold violation: " << e.what() << '\n';
    return kExitThreshold;
  } catch (const DivisionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const VerificationFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
