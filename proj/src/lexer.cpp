#include "lexer.hpp"

#include <cctype>

namespace rcl {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace detail {

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto push = [&](Tok k, std::string text, std::size_t len) {
    out.push_back({k, std::move(text), line, col});
    i += len;
    col += len;
  };
  while (i < s.size()) {
    unsigned char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (std::isspace(c)) {
      ++i;
      ++col;
    } else if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_' || s[j] == '\''))
        ++j;
      push(Tok::Ident, s.substr(i, j - i), j - i);
    } else if (c == '\\') {
      push(Tok::Lambda, "\\", 1);
    } else if (s.compare(i, 2, "\xce\xbb") == 0) {  // UTF-8 lambda
      out.push_back({Tok::Lambda, "\\", line, col});
      i += 2;
      ++col;
    } else if (s.compare(i, 2, "->") == 0) {
      push(Tok::Arrow, "->", 2);
    } else {
      Tok k;
      switch (c) {
        case '.': k = Tok::Dot; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case '/': k = Tok::Slash; break;
        case ',': k = Tok::Comma; break;
        case '&': k = Tok::Amp; break;
        default: throw ParseError(line, col, std::string("unexpected character '") + char(c) + "'");
      }
      push(k, std::string(1, char(c)), 1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const Token& Cursor::expect(Tok k, const char* what) {
  if (!at(k)) fail(std::string("expected ") + what);
  return next();
}

void Cursor::expect_word(const char* w) {
  if (!at_word(w)) fail(std::string("expected '") + w + "'");
  next();
}

void Cursor::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(t.line, t.column, msg + ", got " + got);
}

bool is_keyword(const std::string& s) { return s == "del" || s == "dup" || s == "as"; }

}  // namespace detail
}  // namespace rcl
