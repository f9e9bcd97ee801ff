#pragma once

#include <map>
#include <string>
#include <string_view>

#include "bjcalc/exact_scalar.hpp"

namespace bjcalc {

/// Exponent pair (r, s) standing for x^r p^s, or for x̂^r p̂^s in normal order.
struct Monomial {
  unsigned r = 0;
  unsigned s = 0;

  unsigned degree() const { return r + s; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order, descending: higher total degree first, then
/// higher power of x first.
struct GradedDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) {
      return a.degree() > b.degree();
    }
    return a.r > b.r;
  }
};

using TermMap = std::map<Monomial, ExactScalar, GradedDescending>;

/// Finite linear combination of monomials with ExactScalar coefficients.
/// The Tag distinguishes commutative symbols from normal-ordered operators;
/// multiplication is defined separately for each.
template <class Tag>
class TermSum {
 public:
  TermSum() = default;

  static TermSum monomial(unsigned r, unsigned s, ExactScalar coefficient = ExactScalar(1)) {
    TermSum out;
    out.add_term({r, s}, coefficient);
    return out;
  }

  static TermSum constant(ExactScalar value) { return monomial(0, 0, std::move(value)); }

  void add_term(const Monomial& m, const ExactScalar& coefficient) {
    if (coefficient.is_zero()) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(m, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExactScalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ExactScalar{} : it->second;
  }

  // Total degree, or -1 for zero.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

  TermSum& operator+=(const TermSum& rhs) {
    for (const auto& [m, c] : rhs.terms_) {
      add_term(m, c);
    }
    return *this;
  }

  TermSum& operator-=(const TermSum& rhs) {
    for (const auto& [m, c] : rhs.terms_) {
      add_term(m, -c);
    }
    return *this;
  }

  TermSum& operator*=(const ExactScalar& scalar) {
    if (scalar.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) {
      c *= scalar;
    }
    return *this;
  }

  friend TermSum operator+(TermSum a, const TermSum& b) { return a += b; }
  friend TermSum operator-(TermSum a, const TermSum& b) { return a -= b; }
  friend TermSum operator*(TermSum a, const ExactScalar& s) { return a *= s; }
  friend TermSum operator*(const ExactScalar& s, TermSum a) { return a *= s; }
  TermSum operator-() const { return *this * ExactScalar(-1); }

  friend bool operator==(const TermSum&, const TermSum&) = default;

 private:
  TermMap terms_;
};

namespace detail {

// Renders terms in graded-descending order using the given variable names.
std::string format_terms(const TermMap& terms, std::string_view x_name, std::string_view p_name);

}  // namespace detail

}  // namespace bjcalc
