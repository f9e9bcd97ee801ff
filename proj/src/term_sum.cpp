#include "bjcalc/term_sum.hpp"

#include <vector>

namespace bjcalc::detail {

namespace {

struct Atom {
  bool negative = false;
  std::vector<std::string> factors;
};

std::string power(std::string_view name, long exponent) {
  std::string out(name);
  if (exponent != 1) {
    out += "^" + std::to_string(exponent);
  }
  return out;
}

Atom make_atom(const GaussianRational& c, int hbar_exponent, const Monomial& m,
               std::string_view x_name, std::string_view p_name) {
  Atom atom;
  std::vector<std::string> tail;
  if (hbar_exponent != 0) {
    tail.push_back(power("hbar", hbar_exponent));
  }
  if (m.r != 0) {
    tail.push_back(power(x_name, m.r));
  }
  if (m.s != 0) {
    tail.push_back(power(p_name, m.s));
  }

  if (c.im.is_zero()) {
    atom.negative = c.re.sign() < 0;
    Rational mag = c.re.abs();
    if (!mag.is_one() || tail.empty()) {
      atom.factors.push_back(mag.to_string());
    }
  } else if (c.re.is_zero()) {
    atom.negative = c.im.sign() < 0;
    Rational mag = c.im.abs();
    if (!mag.is_one()) {
      atom.factors.push_back(mag.to_string());
    }
    atom.factors.emplace_back("i");
  } else {
    std::string g = "(" + c.re.to_string();
    g += c.im.sign() < 0 ? " - " : " + ";
    Rational mag = c.im.abs();
    if (!mag.is_one()) {
      g += mag.to_string() + " ";
    }
    g += "i)";
    atom.factors.push_back(std::move(g));
  }
  atom.factors.insert(atom.factors.end(), tail.begin(), tail.end());
  return atom;
}

}  // namespace

std::string format_terms(const TermMap& terms, std::string_view x_name, std::string_view p_name) {
  std::string out;
  for (const auto& [m, scalar] : terms) {
    const auto& by_exponent = scalar.terms();
    for (auto it = by_exponent.rbegin(); it != by_exponent.rend(); ++it) {
      Atom atom = make_atom(it->second, it->first, m, x_name, p_name);
      if (out.empty()) {
        if (atom.negative) {
          out += "-";
        }
      } else {
        out += atom.negative ? " - " : " + ";
      }
      for (std::size_t k = 0; k < atom.factors.size(); ++k) {
        if (k != 0) {
          out += " ";
        }
        out += atom.factors[k];
      }
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace bjcalc::detail
