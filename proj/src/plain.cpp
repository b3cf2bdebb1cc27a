#include "rcl/plain.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "lexer.hpp"
#include "rcl/names.hpp"
#include "rcl/parse.hpp"

namespace rcl {

namespace {

using detail::Cursor;
using detail::Tok;

class PlainParser {
 public:
  explicit PlainParser(const std::string& text) : cur_(detail::lex(text)) {}

  Term run() {
    Term t = expr();
    if (!cur_.at(Tok::End)) cur_.fail("unexpected token");
    return t;
  }

 private:
  Cursor cur_;

  Name ident() {
    if (!cur_.at(Tok::Ident) || detail::is_keyword(cur_.peek().text)) cur_.fail("expected identifier");
    return cur_.next().text;
  }

  Term expr() {
    if (cur_.at(Tok::Lambda)) return lambda();
    Term t = atom();
    while (true) {
      if (cur_.at(Tok::Lambda)) return Term::app(t, lambda());
      if (!cur_.at(Tok::LParen) && !(cur_.at(Tok::Ident) && !detail::is_keyword(cur_.peek().text))) return t;
      t = Term::app(t, atom());
    }
  }

  Term lambda() {
    cur_.next();
    std::vector<Name> xs{ident()};
    while (cur_.at(Tok::Ident)) xs.push_back(ident());
    cur_.expect(Tok::Dot, "'.'");
    Term body = expr();
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = Term::abs(*it, body);
    return body;
  }

  Term atom() {
    if (cur_.at(Tok::LParen)) {
      cur_.next();
      Term t = expr();
      cur_.expect(Tok::RParen, "')'");
      return t;
    }
    return Term::var(ident());
  }
};

void plain_fv(const Term& t, std::vector<Name>& bound, std::vector<Name>& out) {
  switch (t.kind()) {
    case Kind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end() &&
          std::find(out.begin(), out.end(), t.name()) == out.end())
        out.push_back(t.name());
      return;
    case Kind::Abs:
      bound.push_back(t.name());
      plain_fv(t.body(), bound, out);
      bound.pop_back();
      return;
    case Kind::App:
      plain_fv(t.fun(), bound, out);
      plain_fv(t.arg(), bound, out);
      return;
    default: throw TermError("not a plain term");
  }
}

bool occurs_free(const Term& t, const Name& x) {
  switch (t.kind()) {
    case Kind::Var: return t.name() == x;
    case Kind::Abs: return t.name() != x && occurs_free(t.body(), x);
    case Kind::App: return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
    default: throw TermError("not a plain term");
  }
}

class Embed {
 public:
  Embed(const Term& t, SharedOrder order) : supply_(t), order_(order) {}

  Term go(const Term& t) {
    switch (t.kind()) {
      case Kind::Var: return t;
      case Kind::Abs: {
        Term b = go(t.body());
        if (occurs_free(t.body(), t.name())) return Term::abs(t.name(), b);
        return Term::abs(t.name(), Term::era(t.name(), b));
      }
      case Kind::App: {
        auto shared = plain_free_vars(t.fun());
        shared.erase(std::remove_if(shared.begin(), shared.end(),
                                    [&](const Name& x) { return !occurs_free(t.arg(), x); }),
                     shared.end());
        if (shared.empty()) return Term::app(go(t.fun()), go(t.arg()));
        const Name& x = order_ == SharedOrder::FvList ? shared.front() : shared.back();
        Name x1 = supply_.fresh(x);
        Name x2 = supply_.fresh(x);
        Term next = Term::app(rename_free(t.fun(), x, x1), rename_free(t.arg(), x, x2));
        return Term::dup(x, x1, x2, go(next));
      }
      default: throw TermError("to_resource: not a plain term");
    }
  }

 private:
  NameSupply supply_;
  SharedOrder order_;
};

}  // namespace

PlainTerm parse_plain(const std::string& text) { return PlainParser(text).run(); }

bool is_plain(const Term& t) {
  switch (t.kind()) {
    case Kind::Var: return true;
    case Kind::Abs: return is_plain(t.body());
    case Kind::App: return is_plain(t.fun()) && is_plain(t.arg());
    default: return false;
  }
}

std::vector<Name> plain_free_vars(const PlainTerm& t) {
  std::vector<Name> bound, out;
  plain_fv(t, bound, out);
  return out;
}

Term to_resource(const PlainTerm& t, SharedOrder order) {
  if (!is_plain(t)) throw TermError("to_resource: not a plain term");
  Term f = freshen(t);
  return Embed(f, order).go(f);
}

namespace {

// env maps duplication outputs to the variable they copy
Term project(const Term& m, std::map<Name, Name>& env) {
  switch (m.kind()) {
    case Kind::Var: {
      auto it = env.find(m.name());
      return it == env.end() ? m : Term::var(it->second);
    }
    case Kind::Abs: {
      auto it = env.find(m.name());
      if (it == env.end()) return Term::abs(m.name(), project(m.body(), env));
      Name saved = it->second;
      env.erase(it);
      Term b = project(m.body(), env);
      env[m.name()] = saved;
      return Term::abs(m.name(), b);
    }
    case Kind::App: return Term::app(project(m.fun(), env), project(m.arg(), env));
    case Kind::Era: return project(m.body(), env);
    case Kind::Dup: {
      auto it = env.find(m.name());
      Name src = it == env.end() ? m.name() : it->second;
      std::vector<std::pair<Name, std::optional<Name>>> saved;
      for (const Name& y : {m.left(), m.right()}) {
        auto jt = env.find(y);
        saved.push_back({y, jt == env.end() ? std::nullopt : std::optional<Name>(jt->second)});
        env[y] = src;
      }
      Term b = project(m.body(), env);
      for (auto jt = saved.rbegin(); jt != saved.rend(); ++jt) {
        if (jt->second) env[jt->first] = *jt->second;
        else env.erase(jt->first);
      }
      return b;
    }
    case Kind::Sub: break;
  }
  throw TermError("to_plain: explicit substitution");
}

}  // namespace

PlainTerm to_plain(const Term& m) {
  std::map<Name, Name> env;
  return project(m, env);
}

}  // namespace rcl
