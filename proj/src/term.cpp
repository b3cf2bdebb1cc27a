#include "rcl/term.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rcl {

std::string path_to_string(const Path& p) {
  if (p.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += char('0' + p[i]);
  }
  return s;
}

Path path_from_string(const std::string& s) {
  Path p;
  if (s.empty() || s == "ε" || s == "root") return p;
  bool want_digit = true;
  for (char c : s) {
    if (want_digit && (c == '0' || c == '1')) {
      p.push_back(std::uint8_t(c - '0'));
      want_digit = false;
    } else if (!want_digit && c == '.') {
      want_digit = true;
    } else {
      throw TermError("bad position: " + s);
    }
  }
  if (want_digit) throw TermError("bad position: " + s);
  return p;
}

namespace {

std::shared_ptr<const Node> make(Kind k, Name n0, Name n1, Name n2, Term c0, Term c1) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->n0 = std::move(n0);
  n->n1 = std::move(n1);
  n->n2 = std::move(n2);
  n->size = 1 + (c0.empty() ? 0 : c0.size()) + (c1.empty() ? 0 : c1.size());
  n->has_sub = k == Kind::Sub || (!c0.empty() && c0.has_sub()) || (!c1.empty() && c1.has_sub());
  n->c0 = std::move(c0);
  n->c1 = std::move(c1);
  return n;
}

void need(bool ok, const char* what) {
  if (!ok) throw TermError(what);
}

}  // namespace

Term Term::var(Name x) { return Term(make(Kind::Var, std::move(x), {}, {}, {}, {})); }

Term Term::abs(Name x, Term body) {
  need(!body.empty(), "abs: empty body");
  return Term(make(Kind::Abs, std::move(x), {}, {}, std::move(body), {}));
}

Term Term::app(Term fun, Term arg) {
  need(!fun.empty() && !arg.empty(), "app: empty child");
  return Term(make(Kind::App, {}, {}, {}, std::move(fun), std::move(arg)));
}

Term Term::era(Name x, Term body) {
  need(!body.empty(), "era: empty body");
  return Term(make(Kind::Era, std::move(x), {}, {}, std::move(body), {}));
}

Term Term::dup(Name x, Name left, Name right, Term body) {
  need(!body.empty(), "dup: empty body");
  return Term(make(Kind::Dup, std::move(x), std::move(left), std::move(right), std::move(body), {}));
}

Term Term::sub(Term body, Term replacement, Name target) {
  need(!body.empty() && !replacement.empty(), "sub: empty child");
  return Term(make(Kind::Sub, std::move(target), {}, {}, std::move(body), std::move(replacement)));
}

Kind Term::kind() const { return node_->kind; }
const Name& Term::name() const { return node_->n0; }
const Name& Term::left() const { return node_->n1; }
const Name& Term::right() const { return node_->n2; }
const Term& Term::body() const { return node_->c0; }
const Term& Term::fun() const { return node_->c0; }
const Term& Term::arg() const { return node_->c1; }
const Term& Term::replacement() const { return node_->c1; }
std::size_t Term::size() const { return node_->size; }
bool Term::has_sub() const { return node_->has_sub; }

std::size_t Term::arity() const {
  switch (kind()) {
    case Kind::Var: return 0;
    case Kind::App:
    case Kind::Sub: return 2;
    default: return 1;
  }
}

const Term& Term::child(std::size_t i) const {
  if (i >= arity()) throw TermError("child index out of range");
  return i == 0 ? node_->c0 : node_->c1;
}

Term Term::with_child(std::size_t i, Term c) const {
  if (i >= arity()) throw TermError("child index out of range");
  const Node& n = *node_;
  if (i == 0) return Term(make(n.kind, n.n0, n.n1, n.n2, std::move(c), n.c1));
  return Term(make(n.kind, n.n0, n.n1, n.n2, n.c0, std::move(c)));
}

const Term& Term::at(const Path& p) const {
  const Term* t = this;
  for (auto i : p) t = &t->child(i);
  return *t;
}

Term Term::replace_at(const Path& p, Term t) const {
  if (p.empty()) return t;
  Path rest(p.begin() + 1, p.end());
  return with_child(p[0], child(p[0]).replace_at(rest, std::move(t)));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size || x.n0 != y.n0 || x.n1 != y.n1 || x.n2 != y.n2)
    return false;
  return x.c0 == y.c0 && x.c1 == y.c1;
}

namespace {

bool is_binder(Kind k) { return k == Kind::Abs || k == Kind::Era || k == Kind::Dup; }

void print(std::string& out, const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      out += t.name();
      return;
    case Kind::Abs:
      out += '\\';
      out += t.name();
      out += ". ";
      print(out, t.body());
      return;
    case Kind::Era:
      out += "del ";
      out += t.name();
      out += ". ";
      print(out, t.body());
      return;
    case Kind::Dup:
      out += "dup " + t.name() + " as (" + t.left() + "," + t.right() + "). ";
      print(out, t.body());
      return;
    case Kind::App: {
      const Term& f = t.fun();
      if (is_binder(f.kind())) {
        out += '(';
        print(out, f);
        out += ')';
      } else {
        print(out, f);
      }
      const Term& a = t.arg();
      bool paren = is_binder(a.kind()) || a.kind() == Kind::App;
      if (!(paren && out.back() == ')')) out += ' ';
      if (paren) out += '(';
      print(out, a);
      if (paren) out += ')';
      return;
    }
    case Kind::Sub: {
      const Term& b = t.body();
      if (b.kind() == Kind::Var || b.kind() == Kind::Sub) {
        print(out, b);
      } else {
        out += '(';
        print(out, b);
        out += ')';
      }
      out += '[';
      print(out, t.replacement());
      out += '/';
      out += t.name();
      out += ']';
      return;
    }
  }
}

void erase_name(std::vector<Name>& v, const Name& x) {
  v.erase(std::remove(v.begin(), v.end(), x), v.end());
}

void collect_names(const Term& t, std::set<Name>& out) {
  if (t.kind() != Kind::App) out.insert(t.name());
  if (t.kind() == Kind::Dup) {
    out.insert(t.left());
    out.insert(t.right());
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_names(t.child(i), out);
}

void collect_binders(const Term& t, std::vector<Name>& out) {
  switch (t.kind()) {
    case Kind::Abs: out.push_back(t.name()); break;
    case Kind::Dup:
      out.push_back(t.left());
      out.push_back(t.right());
      break;
    case Kind::Sub: out.push_back(t.name()); break;
    default: break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_binders(t.child(i), out);
}

Term rename_all_impl(const Term& t, const std::map<Name, Name>& m) {
  auto r = [&](const Name& x) -> const Name& {
    auto it = m.find(x);
    return it == m.end() ? x : it->second;
  };
  switch (t.kind()) {
    case Kind::Var: return m.count(t.name()) ? Term::var(r(t.name())) : t;
    case Kind::Abs: return Term::abs(r(t.name()), rename_all_impl(t.body(), m));
    case Kind::App: return Term::app(rename_all_impl(t.fun(), m), rename_all_impl(t.arg(), m));
    case Kind::Era: return Term::era(r(t.name()), rename_all_impl(t.body(), m));
    case Kind::Dup:
      return Term::dup(r(t.name()), r(t.left()), r(t.right()), rename_all_impl(t.body(), m));
    case Kind::Sub:
      return Term::sub(rename_all_impl(t.body(), m), rename_all_impl(t.replacement(), m),
                       r(t.name()));
  }
  return t;
}

void collect_positions(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(std::uint8_t(i));
    collect_positions(t.child(i), cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::string s;
  print(s, t);
  return s;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }

std::vector<Name> raw_free_vars(const Term& t) {
  switch (t.kind()) {
    case Kind::Var: return {t.name()};
    case Kind::Abs: {
      auto v = raw_free_vars(t.body());
      erase_name(v, t.name());
      return v;
    }
    case Kind::App: {
      auto v = raw_free_vars(t.fun());
      auto w = raw_free_vars(t.arg());
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }
    case Kind::Era: {
      std::vector<Name> v{t.name()};
      auto w = raw_free_vars(t.body());
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }
    case Kind::Dup: {
      std::vector<Name> v{t.name()};
      auto w = raw_free_vars(t.body());
      erase_name(w, t.left());
      erase_name(w, t.right());
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }
    case Kind::Sub: {
      auto v = raw_free_vars(t.body());
      erase_name(v, t.name());
      auto w = raw_free_vars(t.replacement());
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }
  }
  return {};
}

std::set<Name> all_names(const Term& t) {
  std::set<Name> s;
  collect_names(t, s);
  return s;
}

std::vector<Name> binders(const Term& t) {
  std::vector<Name> v;
  collect_binders(t, v);
  return v;
}

Term rename_all(const Term& t, const std::vector<std::pair<Name, Name>>& map) {
  if (map.empty()) return t;
  std::map<Name, Name> m(map.begin(), map.end());
  return rename_all_impl(t, m);
}

Term rename_free(const Term& t, const Name& from, const Name& to) {
  // untouched subterms are shared with the input
  auto keep = [&](const Term& c, const Term& r) { return c.same_node(r); };
  switch (t.kind()) {
    case Kind::Var: return t.name() == from ? Term::var(to) : t;
    case Kind::Abs: {
      if (t.name() == from) return t;
      Term b = rename_free(t.body(), from, to);
      return keep(t.body(), b) ? t : Term::abs(t.name(), std::move(b));
    }
    case Kind::App: {
      Term f = rename_free(t.fun(), from, to), a = rename_free(t.arg(), from, to);
      return keep(t.fun(), f) && keep(t.arg(), a) ? t : Term::app(std::move(f), std::move(a));
    }
    case Kind::Era: {
      Term b = rename_free(t.body(), from, to);
      if (t.name() != from && keep(t.body(), b)) return t;
      return Term::era(t.name() == from ? to : t.name(), std::move(b));
    }
    case Kind::Dup: {
      bool src = t.name() == from;
      Term b = t.left() == from || t.right() == from ? t.body() : rename_free(t.body(), from, to);
      if (!src && keep(t.body(), b)) return t;
      return Term::dup(src ? to : t.name(), t.left(), t.right(), std::move(b));
    }
    case Kind::Sub: {
      Term b = t.name() == from ? t.body() : rename_free(t.body(), from, to);
      Term r = rename_free(t.replacement(), from, to);
      return keep(t.body(), b) && keep(t.replacement(), r) ? t : Term::sub(std::move(b), std::move(r), t.name());
    }
  }
  return t;
}

std::vector<Path> positions(const Term& t) {
  std::vector<Path> out;
  Path cur;
  collect_positions(t, cur, out);
  return out;
}

}  // namespace rcl
