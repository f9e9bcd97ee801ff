#include "expression_parser.hpp"

#include <cctype>

namespace bjcalc {

namespace {

std::string describe(const std::string& detail, std::size_t line, std::size_t column,
                     const std::vector<std::string>& expected, const std::string& found) {
  std::string msg = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
  if (!detail.empty()) {
    msg += detail + "; ";
  }
  msg += "expected ";
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (k != 0) {
      msg += k + 1 == expected.size() ? " or " : ", ";
    }
    msg += expected[k];
  }
  msg += ", found " + found;
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       std::string found, const std::string& detail)
    : std::runtime_error(describe(detail, line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace detail {

std::vector<Token> tokenize(std::string_view text, char x_letter, char p_letter) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t k = 0;
  auto push = [&](TokenKind kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(k, len)), line, column});
    k += len;
    column += len;
  };
  while (k < text.size()) {
    const char c = text[k];
    if (c == '\n') {
      ++line;
      column = 1;
      ++k;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      ++column;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 1;
      while (k + len < text.size() && std::isdigit(static_cast<unsigned char>(text[k + len]))) {
        ++len;
      }
      push(TokenKind::Number, len);
      continue;
    }
    if (text.substr(k, 4) == "hbar") {
      push(TokenKind::Hbar, 4);
      continue;
    }
    switch (c) {
      case '/':
        push(TokenKind::Slash, 1);
        continue;
      case '+':
        push(TokenKind::Plus, 1);
        continue;
      case '-':
        push(TokenKind::Minus, 1);
        continue;
      case '^':
        push(TokenKind::Caret, 1);
        continue;
      case '(':
        push(TokenKind::LParen, 1);
        continue;
      case ')':
        push(TokenKind::RParen, 1);
        continue;
      case 'i':
        push(TokenKind::I, 1);
        continue;
      default:
        break;
    }
    if (c == x_letter) {
      push(TokenKind::VarX, 1);
      continue;
    }
    if (c == p_letter) {
      push(TokenKind::VarP, 1);
      continue;
    }
    throw ParseError(line, column,
                     {"number", "'i'", "'hbar'", std::string("'") + x_letter + "'", std::string("'") + p_letter + "'",
                      "operator", "parenthesis"},
                     "'" + std::string(1, c) + "'", "unexpected character");
  }
  out.push_back({TokenKind::End, "", line, column});
  return out;
}

}  // namespace detail
}  // namespace bjcalc
