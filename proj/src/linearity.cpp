#include "rcl/linearity.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace rcl {

namespace {

bool contains(const std::vector<Name>& v, const Name& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void drop(std::vector<Name>& v, const Name& x) { v.erase(std::remove(v.begin(), v.end(), x), v.end()); }

struct Checker {
  bool allow_sub;
  std::vector<Violation> out;
  Path cur;

  void bad(const char* rule, const Name& x, std::string msg) {
    out.push_back({cur, rule, x, std::move(msg)});
  }

  std::vector<Name> sub(const Term& t, std::size_t i) {
    cur.push_back(std::uint8_t(i));
    auto v = go(t.child(i));
    cur.pop_back();
    return v;
  }

  // Returns the raw free variable list of t.
  std::vector<Name> go(const Term& t) {
    switch (t.kind()) {
      case Kind::Var: return {t.name()};
      case Kind::Abs: {
        auto v = sub(t, 0);
        if (!contains(v, t.name())) bad("abs", t.name(), t.name() + " is not free in the body");
        drop(v, t.name());
        return v;
      }
      case Kind::App: {
        auto v = sub(t, 0);
        auto w = sub(t, 1);
        for (auto& x : w)
          if (contains(v, x)) bad("app", x, x + " is free in both function and argument");
        v.insert(v.end(), w.begin(), w.end());
        return v;
      }
      case Kind::Era: {
        auto v = sub(t, 0);
        if (contains(v, t.name())) bad("era", t.name(), t.name() + " is free in the body");
        v.insert(v.begin(), t.name());
        return v;
      }
      case Kind::Dup: {
        auto v = sub(t, 0);
        if (t.left() == t.right()) bad("dup", t.left(), "both outputs are named " + t.left());
        if (!contains(v, t.left())) bad("dup", t.left(), t.left() + " is not free in the body");
        if (!contains(v, t.right())) bad("dup", t.right(), t.right() + " is not free in the body");
        drop(v, t.left());
        drop(v, t.right());
        if (contains(v, t.name())) bad("dup", t.name(), t.name() + " is free in the body");
        v.insert(v.begin(), t.name());
        return v;
      }
      case Kind::Sub: {
        if (!allow_sub) bad("sub", t.name(), "explicit substitution in a plain resource term");
        auto v = sub(t, 0);
        auto w = sub(t, 1);
        if (!contains(v, t.name())) bad("sub", t.name(), t.name() + " is not free in the body");
        drop(v, t.name());
        for (auto& x : w)
          if (contains(v, x)) bad("sub", x, x + " is free in both body and replacement");
        v.insert(v.end(), w.begin(), w.end());
        return v;
      }
    }
    return {};
  }
};

bool collect_barendregt(const Term& t, std::set<Name>& seen, const std::set<Name>& free) {
  auto bind = [&](const Name& x) { return !free.count(x) && seen.insert(x).second; };
  switch (t.kind()) {
    case Kind::Abs:
    case Kind::Sub:
      if (!bind(t.name())) return false;
      break;
    case Kind::Dup:
      if (!bind(t.left()) || !bind(t.right())) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (!collect_barendregt(t.child(i), seen, free)) return false;
  return true;
}

struct AlphaEq {
  std::map<Name, Name> ab, ba;

  bool name(const Name& x, const Name& y) {
    auto i = ab.find(x);
    auto j = ba.find(y);
    if (i == ab.end() && j == ba.end()) return x == y;
    return i != ab.end() && j != ba.end() && i->second == y && j->second == x;
  }

  template <class F>
  bool bind(const std::vector<Name>& xs, const std::vector<Name>& ys, F body) {
    std::vector<std::tuple<Name, bool, Name, bool, Name>> saved;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      auto i = ab.find(xs[k]);
      auto j = ba.find(ys[k]);
      saved.emplace_back(xs[k], i != ab.end(), i != ab.end() ? i->second : Name{}, j != ba.end(),
                         j != ba.end() ? j->second : Name{});
      ab[xs[k]] = ys[k];
      ba[ys[k]] = xs[k];
    }
    bool r = body();
    for (std::size_t k = xs.size(); k-- > 0;) {
      auto& [x, hx, ox, hy, oy] = saved[k];
      if (hx) ab[x] = ox; else ab.erase(x);
      if (hy) ba[ys[k]] = oy; else ba.erase(ys[k]);
    }
    return r;
  }

  bool go(const Term& a, const Term& b) {
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
      case Kind::Var: return name(a.name(), b.name());
      case Kind::App: return go(a.fun(), b.fun()) && go(a.arg(), b.arg());
      case Kind::Era: return name(a.name(), b.name()) && go(a.body(), b.body());
      case Kind::Abs:
        return bind({a.name()}, {b.name()}, [&] { return go(a.body(), b.body()); });
      case Kind::Dup:
        return name(a.name(), b.name()) &&
               bind({a.left(), a.right()}, {b.left(), b.right()}, [&] { return go(a.body(), b.body()); });
      case Kind::Sub:
        return go(a.replacement(), b.replacement()) &&
               bind({a.name()}, {b.name()}, [&] { return go(a.body(), b.body()); });
    }
    return false;
  }
};

struct KeyWriter {
  std::string out;
  std::map<Name, std::size_t> env;
  std::size_t next = 0;

  void name(const Name& x) {
    auto it = env.find(x);
    if (it == env.end()) {
      out += x;
    } else {
      out += '%';
      out += std::to_string(it->second);
    }
  }

  template <class F>
  void bind(const std::vector<Name>& xs, F body) {
    std::vector<std::pair<Name, std::optional<std::size_t>>> saved;
    for (auto& x : xs) {
      auto it = env.find(x);
      saved.push_back({x, it == env.end() ? std::nullopt : std::optional<std::size_t>(it->second)});
      env[x] = next++;
    }
    body();
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      if (it->second) env[it->first] = *it->second; else env.erase(it->first);
    }
  }

  void go(const Term& t) {
    switch (t.kind()) {
      case Kind::Var: name(t.name()); return;
      case Kind::App:
        out += '@';
        go(t.fun());
        out += ' ';
        go(t.arg());
        return;
      case Kind::Era:
        out += '-';
        name(t.name());
        out += ' ';
        go(t.body());
        return;
      case Kind::Abs:
        out += '\\';
        bind({t.name()}, [&] { go(t.body()); });
        return;
      case Kind::Dup:
        out += '<';
        name(t.name());
        out += ' ';
        bind({t.left(), t.right()}, [&] { go(t.body()); });
        return;
      case Kind::Sub:
        out += '[';
        go(t.replacement());
        out += ' ';
        bind({t.name()}, [&] { go(t.body()); });
        return;
    }
  }
};

}  // namespace

LinearityReport check_linear(const Term& t, bool allow_sub) {
  Checker c{allow_sub, {}, {}};
  c.go(t);
  LinearityReport r;
  r.violations = std::move(c.out);
  r.ok = r.violations.empty();
  return r;
}

LinearityReport check_sterm(const Term& t) { return check_linear(t, true); }

bool is_linear(const Term& t) { return !t.has_sub() && check_linear(t).ok; }
bool is_sterm(const Term& t) { return check_sterm(t).ok; }

bool barendregt(const Term& t) {
  auto fv = raw_free_vars(t);
  std::set<Name> free(fv.begin(), fv.end());
  std::set<Name> seen;
  return collect_barendregt(t, seen, free);
}

std::vector<Name> free_var_list(const Term& t) {
  auto r = check_linear(t);
  if (!r.ok) {
    auto& v = r.violations.front();
    throw IllFormed("ill-formed term at " + path_to_string(v.position) + " (" + v.rule + "): " + v.message);
  }
  return raw_free_vars(t);
}

std::vector<Name> sfree_var_list(const Term& t) {
  auto r = check_sterm(t);
  if (!r.ok) {
    auto& v = r.violations.front();
    throw IllFormed("ill-formed term at " + path_to_string(v.position) + " (" + v.rule + "): " + v.message);
  }
  return raw_free_vars(t);
}

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  AlphaEq e;
  return e.go(a, b);
}

std::string alpha_key(const Term& t) {
  KeyWriter w;
  w.go(t);
  return std::move(w.out);
}

}  // namespace rcl
