#include "rcl/parse.hpp"

#include <map>
#include <optional>
#include <set>

#include "lexer.hpp"
#include "rcl/names.hpp"

namespace rcl {

namespace {

using detail::Cursor;
using detail::Tok;

struct Binder {
  Name name;
  std::size_t line, column;
};

class Parser {
 public:
  Parser(const std::string& text, bool allow_sub)
      : cur_(detail::lex(text)), allow_sub_(allow_sub) {}

  Term run() {
    Term t = expr();
    if (!cur_.at(Tok::End)) cur_.fail("unexpected token");
    check_barendregt(t);
    return t;
  }

 private:
  Cursor cur_;
  bool allow_sub_;
  std::vector<Binder> binders_;

  bool at_binder() const {
    return cur_.at(Tok::Lambda) || cur_.at_word("del") || cur_.at_word("dup");
  }
  bool at_atom() const {
    return (cur_.at(Tok::Ident) && !detail::is_keyword(cur_.peek().text)) || cur_.at(Tok::LParen);
  }

  Name ident(bool binding) {
    if (!cur_.at(Tok::Ident) || detail::is_keyword(cur_.peek().text)) cur_.fail("expected identifier");
    const auto& t = cur_.next();
    if (binding) binders_.push_back({t.text, t.line, t.column});
    return t.text;
  }

  Term expr() {
    if (at_binder()) return binder();
    return application();
  }

  Term binder() {
    if (cur_.at(Tok::Lambda)) {
      cur_.next();
      std::vector<Name> xs{ident(true)};
      while (cur_.at(Tok::Ident)) xs.push_back(ident(true));
      cur_.expect(Tok::Dot, "'.'");
      Term body = expr();
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = Term::abs(*it, body);
      return body;
    }
    if (cur_.at_word("del")) {
      cur_.next();
      Name x = ident(false);
      cur_.expect(Tok::Dot, "'.'");
      return Term::era(x, expr());
    }
    cur_.expect_word("dup");
    Name x = ident(false);
    cur_.expect_word("as");
    cur_.expect(Tok::LParen, "'('");
    Name a = ident(true);
    cur_.expect(Tok::Comma, "','");
    Name b = ident(true);
    cur_.expect(Tok::RParen, "')'");
    cur_.expect(Tok::Dot, "'.'");
    return Term::dup(x, a, b, expr());
  }

  Term application() {
    Term t = postfix();
    while (true) {
      if (at_binder()) return Term::app(t, binder());
      if (!at_atom()) return t;
      t = Term::app(t, postfix());
    }
  }

  Term postfix() {
    Term t = primary();
    while (cur_.at(Tok::LBracket)) {
      if (!allow_sub_) cur_.fail("explicit substitution not allowed here");
      cur_.next();
      Term n = expr();
      cur_.expect(Tok::Slash, "'/'");
      Name x = ident(true);
      cur_.expect(Tok::RBracket, "']'");
      t = Term::sub(t, n, x);
    }
    return t;
  }

  Term primary() {
    if (cur_.at(Tok::LParen)) {
      cur_.next();
      Term t = expr();
      cur_.expect(Tok::RParen, "')'");
      return t;
    }
    return Term::var(ident(false));
  }

  void check_barendregt(const Term& t) {
    auto fv = raw_free_vars(t);
    std::set<Name> free(fv.begin(), fv.end());
    std::set<Name> seen;
    for (auto& b : binders_) {
      if (!seen.insert(b.name).second)
        throw ParseError(b.line, b.column, "binder '" + b.name + "' is bound more than once");
      if (free.count(b.name))
        throw ParseError(b.line, b.column, "binder '" + b.name + "' also occurs free");
    }
  }
};

class Freshener {
 public:
  explicit Freshener(const Term& t) : supply_(t) {
    for (auto& x : raw_free_vars(t)) taken_.insert(x);
  }

  Term go(const Term& t, std::map<Name, Name>& env) {
    auto look = [&](const Name& x) {
      auto it = env.find(x);
      return it == env.end() ? x : it->second;
    };
    switch (t.kind()) {
      case Kind::Var: {
        Name x = look(t.name());
        return x == t.name() ? t : Term::var(std::move(x));
      }
      case Kind::Era: {
        Name x = look(t.name());
        Term b = go(t.body(), env);
        return x == t.name() && b.same_node(t.body()) ? t : Term::era(std::move(x), std::move(b));
      }
      case Kind::App: {
        Term f = go(t.fun(), env), a = go(t.arg(), env);
        return f.same_node(t.fun()) && a.same_node(t.arg()) ? t : Term::app(std::move(f), std::move(a));
      }
      case Kind::Abs: {
        Scope s(*this, env, {t.name()});
        Term b = go(t.body(), env);
        return s.renamed[0] == t.name() && b.same_node(t.body()) ? t : Term::abs(s.renamed[0], std::move(b));
      }
      case Kind::Dup: {
        Name src = look(t.name());
        Scope s(*this, env, {t.left(), t.right()});
        Term b = go(t.body(), env);
        if (src == t.name() && s.renamed[0] == t.left() && s.renamed[1] == t.right() && b.same_node(t.body()))
          return t;
        return Term::dup(src, s.renamed[0], s.renamed[1], std::move(b));
      }
      case Kind::Sub: {
        Term n = go(t.replacement(), env);
        Scope s(*this, env, {t.name()});
        Term b = go(t.body(), env);
        if (s.renamed[0] == t.name() && b.same_node(t.body()) && n.same_node(t.replacement())) return t;
        return Term::sub(std::move(b), std::move(n), s.renamed[0]);
      }
    }
    return t;
  }

 private:
  struct Scope {
    std::map<Name, Name>& env;
    std::vector<std::pair<Name, std::optional<Name>>> saved;
    std::vector<Name> renamed;
    Scope(Freshener& f, std::map<Name, Name>& e, std::vector<Name> xs) : env(e) {
      for (auto& x : xs) {
        Name y = f.taken_.count(x) ? f.supply_.fresh(x) : x;
        f.taken_.insert(y);
        auto it = env.find(x);
        saved.push_back({x, it == env.end() ? std::nullopt : std::optional<Name>(it->second)});
        env[x] = y;
        renamed.push_back(y);
      }
    }
    ~Scope() {
      for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
        if (it->second)
          env[it->first] = *it->second;
        else
          env.erase(it->first);
      }
    }
  };

  NameSupply supply_;
  std::set<Name> taken_;
};

}  // namespace

Term parse_term(const std::string& text) { return Parser(text, false).run(); }
Term parse_sterm(const std::string& text) { return Parser(text, true).run(); }

Term freshen(const Term& t) {
  Freshener f(t);
  std::map<Name, Name> env;
  return f.go(t, env);
}

}  // namespace rcl
