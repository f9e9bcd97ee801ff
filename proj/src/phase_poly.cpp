#include "bjcalc/phase_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bjcalc {

unsigned total_degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0U); }

double multi_factorial(const MultiIndex& alpha) {
  double out = 1.0;
  for (unsigned a : alpha) {
    for (unsigned k = 2; k <= a; ++k) out *= k;
  }
  return out;
}

namespace {

void enumerate(unsigned vars, unsigned remaining, MultiIndex& current, std::size_t pos, std::vector<MultiIndex>& out) {
  if (pos + 1 == vars) {
    current[pos] = remaining;
    out.push_back(current);
    return;
  }
  for (unsigned a = remaining + 1; a-- > 0;) {
    current[pos] = a;
    enumerate(vars, remaining - a, current, pos + 1, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_up_to(unsigned vars, unsigned max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex current(vars, 0);
  for (unsigned d = max_degree + 1; d-- > 0;) {
    enumerate(vars, d, current, 0, out);
  }
  return out;
}

PhasePolynomial PhasePolynomial::constant(unsigned n, Complex value) {
  PhasePolynomial out(n);
  out.add_term(MultiIndex(2 * n, 0), value);
  return out;
}

PhasePolynomial PhasePolynomial::coordinate(unsigned n, unsigned index) {
  if (index >= 2 * n) {
    throw std::out_of_range("PhasePolynomial::coordinate: index out of range");
  }
  PhasePolynomial out(n);
  MultiIndex alpha(2 * n, 0);
  alpha[index] = 1;
  out.add_term(alpha, 1.0);
  return out;
}

int PhasePolynomial::degree() const {
  int d = -1;
  for (const auto& [alpha, c] : coeffs_) {
    d = std::max(d, static_cast<int>(total_degree(alpha)));
  }
  return d;
}

Complex PhasePolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void PhasePolynomial::add_term(const MultiIndex& alpha, Complex value) {
  if (alpha.size() != vars()) {
    throw std::invalid_argument("PhasePolynomial: multi-index has wrong length");
  }
  if (value == Complex{}) {
    return;
  }
  auto [it, inserted] = coeffs_.try_emplace(alpha, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex{}) {
      coeffs_.erase(it);
    }
  }
}

void PhasePolynomial::require_same_dim(const PhasePolynomial& rhs) const {
  if (rhs.n_ != n_) {
    throw std::invalid_argument("PhasePolynomial: dimension mismatch");
  }
}

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& rhs) {
  require_same_dim(rhs);
  for (const auto& [alpha, c] : rhs.coeffs_) add_term(alpha, c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& rhs) {
  require_same_dim(rhs);
  for (const auto& [alpha, c] : rhs.coeffs_) add_term(alpha, -c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator*=(Complex scalar) {
  if (scalar == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [alpha, c] : coeffs_) c *= scalar;
  return *this;
}

PhasePolynomial PhasePolynomial::truncated_product(const PhasePolynomial& rhs, unsigned max_degree) const {
  require_same_dim(rhs);
  PhasePolynomial out(n_);
  MultiIndex sum(vars());
  for (const auto& [a, ca] : coeffs_) {
    const unsigned da = total_degree(a);
    for (const auto& [b, cb] : rhs.coeffs_) {
      if (da + total_degree(b) > max_degree) continue;
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = a[j] + b[j];
      out.add_term(sum, ca * cb);
    }
  }
  return out;
}

PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
  return a.truncated_product(b, std::numeric_limits<unsigned>::max());
}

Complex PhasePolynomial::evaluate(const PhasePoint& z) const {
  if (z.dim() != n_) {
    throw std::invalid_argument("PhasePolynomial::evaluate: dimension mismatch");
  }
  const std::vector<double> coords = z.flat();
  Complex sum{};
  for (const auto& [alpha, c] : coeffs_) {
    double m = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      for (unsigned e = 0; e < alpha[j]; ++e) m *= coords[j];
    }
    sum += c * m;
  }
  return sum;
}

double PhasePolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [alpha, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::string format_real(double value, int precision) {
  if (!std::isfinite(value)) {
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  }
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string format_phase_polynomial(const PhasePolynomial& poly, int precision) {
  const unsigned n = poly.dim();
  std::vector<std::string> names;
  for (const char* base : {"x", "p"}) {
    for (unsigned j = 0; j < n; ++j) {
      names.push_back(n == 1 ? std::string(base) : std::string(base) + std::to_string(j + 1));
    }
  }

  std::vector<std::pair<MultiIndex, Complex>> terms(poly.coeffs().begin(), poly.coeffs().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const unsigned da = total_degree(a.first);
    const unsigned db = total_degree(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });

  std::string out;
  for (const auto& [alpha, c] : terms) {
    const std::string re = format_real(c.real(), precision);
    const std::string im = format_real(c.imag(), precision);
    const bool re_zero = re == "0";
    const bool im_zero = im == "0";
    if (re_zero && im_zero) continue;

    std::vector<std::string> vars;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      vars.push_back(alpha[j] == 1 ? names[j] : names[j] + "^" + std::to_string(alpha[j]));
    }

    bool negative = false;
    std::vector<std::string> factors;
    auto strip = [](const std::string& s) { return s.front() == '-' ? s.substr(1) : s; };
    if (im_zero) {
      negative = re.front() == '-';
      if (strip(re) != "1" || vars.empty()) factors.push_back(strip(re));
    } else if (re_zero) {
      negative = im.front() == '-';
      if (strip(im) != "1") factors.push_back(strip(im));
      factors.emplace_back("i");
    } else {
      std::string g = "(" + re + (im.front() == '-' ? " - " : " + ");
      if (strip(im) != "1") g += strip(im) + " ";
      factors.push_back(g + "i)");
    }
    factors.insert(factors.end(), vars.begin(), vars.end());

    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) out += " ";
      out += factors[k];
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace bjcalc
