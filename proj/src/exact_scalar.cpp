#include "bjcalc/exact_scalar.hpp"

#include <cmath>

namespace bjcalc {

GaussianRational& GaussianRational::operator+=(const GaussianRational& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& rhs) {
  Rational real = re * rhs.re - im * rhs.im;
  Rational imag = re * rhs.im + im * rhs.re;
  re = std::move(real);
  im = std::move(imag);
  return *this;
}

ExactScalar::ExactScalar(GaussianRational value, int hbar_exponent) {
  if (!value.is_zero()) {
    terms_.emplace(hbar_exponent, std::move(value));
  }
}

GaussianRational ExactScalar::coefficient(int hbar_exponent) const {
  auto it = terms_.find(hbar_exponent);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

int ExactScalar::min_hbar_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }

int ExactScalar::max_hbar_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

ExactScalar ExactScalar::pow(unsigned exponent) const {
  ExactScalar result(1);
  ExactScalar base = *this;
  while (exponent > 0) {
    if (exponent & 1U) {
      result *= base;
    }
    exponent >>= 1U;
    if (exponent > 0) {
      base *= base;
    }
  }
  return result;
}

std::complex<double> ExactScalar::evaluate(double hbar) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    sum += c.to_complex() * std::pow(hbar, e);
  }
  return sum;
}

void ExactScalar::accumulate(int exponent, const GaussianRational& value) {
  if (value.is_zero()) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(exponent, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& rhs) {
  for (const auto& [e, c] : rhs.terms_) {
    accumulate(e, c);
  }
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& rhs) {
  for (const auto& [e, c] : rhs.terms_) {
    accumulate(e, -c);
  }
  return *this;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.accumulate(ea + eb, ca * cb);
    }
  }
  return out;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& rhs) {
  *this = *this * rhs;
  return *this;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar out;
  for (const auto& [e, c] : terms_) {
    out.terms_.emplace(e, -c);
  }
  return out;
}

}  // namespace bjcalc
