#include "rcl/types.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace rcl {

Type Type::atom(std::string name) {
  auto n = std::make_shared<TypeNode>();
  n->atom = true;
  n->name = std::move(name);
  return Type(n);
}

Type Type::arrow(Inter dom, Type cod) {
  if (cod.empty()) throw TermError("arrow: empty codomain");
  auto n = std::make_shared<TypeNode>();
  n->atom = false;
  std::sort(dom.begin(), dom.end());
  n->dom = std::move(dom);
  n->cod = std::move(cod);
  return Type(n);
}

bool Type::is_atom() const { return node_->atom; }
const std::string& Type::name() const { return node_->name; }
const Inter& Type::dom() const { return node_->dom; }
const Type& Type::cod() const { return node_->cod; }

namespace {

int compare_inter(const Inter& a, const Inter& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (int c = compare(a[i], b[i])) return c;
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

Type dedup(const Type& t);

Inter dedup(const Inter& a) {
  Inter out;
  for (auto& t : a) out.push_back(dedup(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Type dedup(const Type& t) { return t.is_atom() ? t : Type::arrow(dedup(t.dom()), dedup(t.cod())); }

}  // namespace

int compare(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return 0;
  if (a.is_atom() != b.is_atom()) return a.is_atom() ? 1 : -1;
  if (a.is_atom()) return a.name().compare(b.name());
  if (int c = compare_inter(a.dom(), b.dom())) return c;
  return compare(a.cod(), b.cod());
}

Inter inter(std::vector<Type> ts) {
  std::sort(ts.begin(), ts.end());
  return ts;
}

Inter top() { return {}; }
Inter single(const Type& t) { return {t}; }

Inter meet(const Inter& a, const Inter& b) {
  Inter r = a;
  r.insert(r.end(), b.begin(), b.end());
  std::sort(r.begin(), r.end());
  return r;
}

bool type_eq(const Type& a, const Type& b, TypeEq mode) {
  if (mode == TypeEq::Multiset) return a == b;
  return dedup(a) == dedup(b);
}

bool type_eq(const Inter& a, const Inter& b, TypeEq mode) {
  if (mode == TypeEq::Multiset) return compare_inter(a, b) == 0;
  return compare_inter(dedup(a), dedup(b)) == 0;
}

namespace {

void print(std::string& out, const Type& t);

void print_item(std::string& out, const Type& t) {
  if (t.is_atom()) {
    out += t.name();
  } else {
    out += '(';
    print(out, t);
    out += ')';
  }
}

void print_inter(std::string& out, const Inter& a, bool bare = false) {
  if (a.empty()) {
    out += "Top";
    return;
  }
  if (bare && a.size() == 1) {
    print(out, a[0]);
    return;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += " & ";
    print_item(out, a[i]);
  }
}

void print(std::string& out, const Type& t) {
  if (t.is_atom()) {
    out += t.name();
    return;
  }
  print_inter(out, t.dom());
  out += " -> ";
  print(out, t.cod());
}

using detail::Cursor;
using detail::Tok;

struct Parsed {
  Inter items;
  bool single_strict;  // one strict type, not written as Top or with &
};

Type parse_strict(Cursor& c);

Parsed parse_type_expr(Cursor& c);

Type parse_item(Cursor& c, bool& was_top) {
  was_top = false;
  if (c.at(Tok::LParen)) {
    c.next();
    Type t = parse_strict(c);
    c.expect(Tok::RParen, "')'");
    return t;
  }
  if (c.at_word("Top")) {
    c.next();
    was_top = true;
    return Type();
  }
  if (c.at(Tok::Ident)) return Type::atom(c.next().text);
  c.fail("expected a type");
}

// inter ( -> strict )?
Parsed parse_type_expr(Cursor& c) {
  Inter items;
  bool any_top = false, any_amp = false;
  bool top_flag;
  Type t = parse_item(c, top_flag);
  if (top_flag) any_top = true; else items.push_back(t);
  while (c.at(Tok::Amp)) {
    c.next();
    any_amp = true;
    t = parse_item(c, top_flag);
    if (top_flag) any_top = true; else items.push_back(t);
  }
  if (c.at(Tok::Arrow)) {
    c.next();
    Type cod = parse_strict(c);
    return Parsed{{Type::arrow(inter(items), cod)}, true};
  }
  return Parsed{inter(items), !any_top && !any_amp};
}

Type parse_strict(Cursor& c) {
  auto p = parse_type_expr(c);
  if (!p.single_strict) c.fail("expected a strict type, not an intersection");
  return p.items[0];
}

}  // namespace

std::string to_string(const Type& t) {
  std::string s;
  print(s, t);
  return s;
}

std::string to_string(const Inter& a) {
  std::string s;
  print_inter(s, a, true);
  return s;
}

Type parse_type(const std::string& text) {
  Cursor c(detail::lex(text));
  Type t = parse_strict(c);
  if (!c.at(Tok::End)) c.fail("unexpected input after type");
  return t;
}

Inter parse_inter(const std::string& text) {
  Cursor c(detail::lex(text));
  auto p = parse_type_expr(c);
  if (!c.at(Tok::End)) c.fail("unexpected input after type");
  return p.items;
}

Basis basis_meet(const std::vector<Basis>& gs) {
  if (gs.empty()) return {};
  Basis r = gs[0];
  for (std::size_t i = 1; i < gs.size(); ++i) {
    if (gs[i].size() != r.size()) throw BasisError("basis meet: domains differ");
    for (auto& [x, a] : gs[i]) {
      auto it = r.find(x);
      if (it == r.end()) throw BasisError("basis meet: domains differ at " + x);
      it->second = meet(it->second, a);
    }
  }
  return r;
}

Basis basis_top(const Basis& g) {
  Basis r;
  for (auto& [x, a] : g) r.emplace(x, top());
  return r;
}

bool basis_eq(const Basis& a, const Basis& b, TypeEq mode) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first || !type_eq(ia->second, ib->second, mode)) return false;
  return true;
}

std::string to_string(const Basis& g) {
  std::string s;
  for (auto& [x, a] : g) {
    if (!s.empty()) s += ", ";
    s += x + ":" + to_string(a);
  }
  return s;
}

Type AtomSupply::fresh() {
  unsigned k = next_++;
  std::string n(1, char('a' + k % 26));
  if (k >= 26) n += std::to_string(k / 26);
  return Type::atom(n);
}

}  // namespace rcl
