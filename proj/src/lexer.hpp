#pragma once

#include <string>
#include <vector>

#include "rcl/parse.hpp"

namespace rcl::detail {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, LBracket, RBracket, Slash, Comma, Arrow, Amp, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::vector<Token> lex(const std::string& text);

// Cursor over a token vector with position-aware errors.
class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return at(Tok::Ident) && peek().text == w; }
  const Token& expect(Tok k, const char* what);
  void expect_word(const char* w);
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_keyword(const std::string& s);

}  // namespace rcl::detail
