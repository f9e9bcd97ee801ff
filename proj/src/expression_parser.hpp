#pragma once

// Recursive-descent parser shared by the symbol and operator grammars:
//
//   symbol := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor+
//   factor := rational | 'i' | 'hbar' ('^' int)? | VAR_X ('^' uint)? | VAR_P ('^' uint)? | '(' symbol ')'
//   rational := uint ('/' uint)?
//
// Juxtaposition multiplies left to right through Policy::mul, so the same
// parser produces commutative symbols or ordered operator words.

#include <string>
#include <string_view>
#include <vector>

#include "bjcalc/exact_scalar.hpp"
#include "bjcalc/parse_error.hpp"

namespace bjcalc::detail {

enum class TokenKind { Number, Slash, Plus, Minus, Caret, LParen, RParen, I, Hbar, VarX, VarP, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text, char x_letter, char p_letter);

template <class Policy>
class ExpressionParser {
 public:
  using Value = typename Policy::Value;

  ExpressionParser(std::string_view text, char x_letter, char p_letter)
      : tokens_(tokenize(text, x_letter, p_letter)),
        x_name_(1, x_letter),
        p_name_(1, p_letter) {}

  Value parse() {
    Value v = symbol();
    if (peek().kind != TokenKind::End) {
      fail({"'+'", "'-'", "end of input"});
    }
    return v;
  }

 private:
  static constexpr unsigned kMaxExponent = 1000;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail = {}) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, std::move(expected), std::move(found), detail);
  }

  std::vector<std::string> factor_starts() const {
    return {"number", "'i'", "'hbar'", "'" + x_name_ + "'", "'" + p_name_ + "'", "'('"};
  }

  bool starts_factor(TokenKind k) const {
    switch (k) {
      case TokenKind::Number:
      case TokenKind::I:
      case TokenKind::Hbar:
      case TokenKind::VarX:
      case TokenKind::VarP:
      case TokenKind::LParen:
        return true;
      default:
        return false;
    }
  }

  Value symbol() {
    bool negate = false;
    if (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      negate = advance().kind == TokenKind::Minus;
    }
    Value acc = term();
    if (negate) {
      acc = Policy::mul(Policy::scalar(ExactScalar(-1)), acc);
    }
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      const bool minus = advance().kind == TokenKind::Minus;
      Value rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  Value term() {
    if (!starts_factor(peek().kind)) {
      fail(factor_starts());
    }
    Value acc = factor();
    while (starts_factor(peek().kind)) {
      acc = Policy::mul(acc, factor());
    }
    return acc;
  }

  unsigned exponent_digits(const Token& t) {
    if (t.text.size() > 4 || std::stoul(t.text) > kMaxExponent) {
      throw ParseError(t.line, t.column, {"exponent <= " + std::to_string(kMaxExponent)}, "'" + t.text + "'",
                       "exponent too large");
    }
    return static_cast<unsigned>(std::stoul(t.text));
  }

  unsigned variable_exponent() {
    if (peek().kind != TokenKind::Caret) {
      return 1;
    }
    advance();
    if (peek().kind == TokenKind::Minus) {
      fail({"non-negative integer"}, "negative exponent on a phase-space variable");
    }
    if (peek().kind != TokenKind::Number) {
      fail({"non-negative integer"});
    }
    return exponent_digits(advance());
  }

  Value factor() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Number: {
        advance();
        mpz_class numerator(t.text, 10);
        mpz_class denominator(1);
        if (peek().kind == TokenKind::Slash) {
          advance();
          if (peek().kind != TokenKind::Number) {
            fail({"unsigned integer"});
          }
          const Token& d = peek();
          denominator = mpz_class(d.text, 10);
          if (denominator == 0) {
            fail({"positive integer"}, "zero denominator");
          }
          advance();
        }
        return Policy::scalar(ExactScalar(Rational(numerator, denominator)));
      }
      case TokenKind::I:
        advance();
        return Policy::scalar(ExactScalar::i());
      case TokenKind::Hbar: {
        advance();
        int exponent = 1;
        if (peek().kind == TokenKind::Caret) {
          advance();
          bool negative = false;
          if (peek().kind == TokenKind::Minus || peek().kind == TokenKind::Plus) {
            negative = advance().kind == TokenKind::Minus;
          }
          if (peek().kind != TokenKind::Number) {
            fail({"integer"});
          }
          exponent = static_cast<int>(exponent_digits(advance()));
          if (negative) {
            exponent = -exponent;
          }
        }
        return Policy::scalar(ExactScalar::hbar(exponent));
      }
      case TokenKind::VarX:
        advance();
        return Policy::x_power(variable_exponent());
      case TokenKind::VarP:
        advance();
        return Policy::p_power(variable_exponent());
      case TokenKind::LParen: {
        advance();
        Value inner = symbol();
        if (peek().kind != TokenKind::RParen) {
          fail({"'+'", "'-'", "')'"});
        }
        advance();
        return inner;
      }
      default:
        fail(factor_starts());
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string x_name_;
  std::string p_name_;
};

}  // namespace bjcalc::detail
