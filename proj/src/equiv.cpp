#include "rcl/equiv.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "rcl/linearity.hpp"

namespace rcl {

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::SwapEra: return "eps1";
    case Axiom::SwapDup: return "eps2";
    case Axiom::Reassoc: return "eps3";
    case Axiom::CommDup: return "eps4";
  }
  return "?";
}

namespace {

std::optional<Term> move_here(const Term& t, Axiom a) {
  switch (a) {
    case Axiom::SwapEra: {
      if (t.kind() != Kind::Era || t.body().kind() != Kind::Era) return std::nullopt;
      const Term& in = t.body();
      return Term::era(in.name(), Term::era(t.name(), in.body()));
    }
    case Axiom::SwapDup:
      if (t.kind() != Kind::Dup) return std::nullopt;
      return Term::dup(t.name(), t.right(), t.left(), t.body());
    case Axiom::Reassoc: {
      if (t.kind() != Kind::Dup || t.body().kind() != Kind::Dup) return std::nullopt;
      const Term& in = t.body();
      if (in.name() != t.left()) return std::nullopt;
      // x<y,z (y<u,v M)  ->  x<y,u (y<z,v M)
      return Term::dup(t.name(), t.left(), in.left(), Term::dup(in.name(), t.right(), in.right(), in.body()));
    }
    case Axiom::CommDup: {
      if (t.kind() != Kind::Dup || t.body().kind() != Kind::Dup) return std::nullopt;
      const Term& in = t.body();
      if (in.name() == t.left() || in.name() == t.right()) return std::nullopt;
      if (t.name() == in.left() || t.name() == in.right()) return std::nullopt;
      return Term::dup(in.name(), in.left(), in.right(), Term::dup(t.name(), t.left(), t.right(), in.body()));
    }
  }
  return std::nullopt;
}

constexpr Axiom kAxioms[] = {Axiom::SwapEra, Axiom::SwapDup, Axiom::Reassoc, Axiom::CommDup};

void collect_moves(const Term& t, Path& cur, std::vector<EquivMove>& out) {
  for (Axiom a : kAxioms)
    if (move_here(t, a)) out.push_back({a, cur});
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(std::uint8_t(i));
    collect_moves(t.child(i), cur, out);
    cur.pop_back();
  }
}

// Canonical representative construction.
class Canon {
 public:
  explicit Canon(const Term& t) {
    if (t.has_sub()) throw EquivError("equiv_canonical: explicit substitution in term");
    for (auto& x : raw_free_vars(t)) free_.insert(x);
    scan(t, "", 0, Kind::Var);
  }

  Term build(const Term& t) {
    std::map<Name, Name> env;
    return emit(t, env);
  }

 private:
  enum class Use : std::uint8_t { V, E, D };
  struct Occ {
    Use use;
    std::string addr;  // skeleton path, plus run index for E and D
  };
  struct Split {
    Name left, right;
  };

  std::set<Name> free_;
  std::map<Name, Occ> occ_;
  std::map<Name, Split> split_;
  std::map<Name, std::string> sig_;
  std::map<Name, std::size_t> order_;  // canonical bound names by creation
  std::size_t counter_ = 0;

  void scan(const Term& t, const std::string& sp, std::size_t run, Kind last) {
    switch (t.kind()) {
      case Kind::Var: occ_[t.name()] = {Use::V, sp}; return;
      case Kind::Abs: scan(t.body(), sp + 'b', 0, Kind::Var); return;
      case Kind::App:
        scan(t.fun(), sp + 'f', 0, Kind::Var);
        scan(t.arg(), sp + 'a', 0, Kind::Var);
        return;
      case Kind::Era:
      case Kind::Dup: {
        if (last != Kind::Var && last != t.kind()) ++run;
        std::string addr = sp + '#' + std::to_string(run);
        occ_[t.name()] = {t.kind() == Kind::Era ? Use::E : Use::D, addr};
        if (t.kind() == Kind::Dup) split_[t.name()] = {t.left(), t.right()};
        scan(t.body(), sp, run, t.kind());
        return;
      }
      case Kind::Sub: return;
    }
  }

  bool internal(const Name& o, const std::string& addr) const {
    auto it = occ_.find(o);
    return it != occ_.end() && it->second.use == Use::D && it->second.addr == addr;
  }

  void leaves(const Name& x, const std::string& addr, std::vector<Name>& out) const {
    const Split& s = split_.at(x);
    for (const Name* o : {&s.left, &s.right}) {
      if (internal(*o, addr)) leaves(*o, addr, out);
      else out.push_back(*o);
    }
  }

  const std::string& sig(const Name& x) {
    auto it = sig_.find(x);
    if (it != sig_.end()) return it->second;
    const Occ& o = occ_.at(x);
    std::string s;
    switch (o.use) {
      case Use::V: s = "V" + o.addr; break;
      case Use::E: s = "E" + o.addr; break;
      case Use::D: {
        std::vector<Name> ls;
        leaves(x, o.addr, ls);
        std::vector<std::string> ss;
        for (auto& l : ls) ss.push_back(sig(l));
        std::sort(ss.begin(), ss.end());
        s = "D" + o.addr + "{";
        for (auto& e : ss) s += e + ",";
        s += "}";
        break;
      }
    }
    return sig_[x] = std::move(s);
  }

  Name gen() {
    Name x;
    do {
      x = "v" + std::to_string(++counter_);
    } while (free_.count(x));
    order_[x] = counter_;
    return x;
  }

  bool name_less(const Name& a, const Name& b) const {
    auto i = order_.find(a), j = order_.find(b);
    bool fa = i == order_.end(), fb = j == order_.end();
    if (fa != fb) return !fa;
    if (!fa) return i->second < j->second;
    return a < b;
  }

  static const Name& look(const std::map<Name, Name>& env, const Name& x) {
    auto it = env.find(x);
    return it == env.end() ? x : it->second;
  }

  Term emit(const Term& t, std::map<Name, Name>& env) {
    switch (t.kind()) {
      case Kind::Var: return Term::var(look(env, t.name()));
      case Kind::Abs: {
        Name c = gen();
        env[t.name()] = c;
        return Term::abs(c, emit(t.body(), env));
      }
      case Kind::App: {
        Term f = emit(t.fun(), env);
        return Term::app(f, emit(t.arg(), env));
      }
      case Kind::Era: {
        std::vector<Name> xs;
        const Term* cur = &t;
        for (; cur->kind() == Kind::Era; cur = &cur->body()) xs.push_back(look(env, cur->name()));
        std::sort(xs.begin(), xs.end(), [&](const Name& a, const Name& b) { return name_less(a, b); });
        Term body = emit(*cur, env);
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = Term::era(*it, body);
        return body;
      }
      case Kind::Dup: {
        std::string addr = occ_.at(t.name()).addr;
        std::vector<Name> sources;
        std::set<Name> outputs;
        const Term* cur = &t;
        for (; cur->kind() == Kind::Dup; cur = &cur->body()) {
          sources.push_back(cur->name());
          outputs.insert(cur->left());
          outputs.insert(cur->right());
        }
        std::vector<Name> roots;
        for (auto& s : sources)
          if (!outputs.count(s)) roots.push_back(s);
        std::sort(roots.begin(), roots.end(), [&](const Name& a, const Name& b) {
          return name_less(look(env, a), look(env, b));
        });
        struct Step {
          Name src, left, right;
        };
        std::vector<Step> steps;
        for (auto& r : roots) {
          std::vector<Name> ls;
          leaves(r, addr, ls);
          std::stable_sort(ls.begin(), ls.end(), [&](const Name& a, const Name& b) { return sig(a) < sig(b); });
          Name src = look(env, r);
          for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
            Name l = gen();
            env[ls[i]] = l;
            Name rr = gen();
            if (i + 2 == ls.size()) env[ls[i + 1]] = rr;
            steps.push_back({src, l, rr});
            src = rr;
          }
        }
        Term body = emit(*cur, env);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) body = Term::dup(it->src, it->left, it->right, body);
        return body;
      }
      case Kind::Sub: break;
    }
    throw EquivError("equiv_canonical: explicit substitution in term");
  }
};

}  // namespace

std::optional<Term> apply_move(const Term& t, const EquivMove& m) {
  const Term* cur = &t;
  for (auto i : m.position) {
    if (i >= cur->arity()) return std::nullopt;
    cur = &cur->child(i);
  }
  auto r = move_here(*cur, m.axiom);
  if (!r) return std::nullopt;
  return t.replace_at(m.position, *r);
}

Term apply_moves(Term t, const std::vector<EquivMove>& ms) {
  for (auto& m : ms) {
    auto r = apply_move(t, m);
    if (!r) throw EquivError(axiom_name(m.axiom) + " does not apply at " + path_to_string(m.position));
    t = *r;
  }
  return t;
}

std::vector<EquivMove> moves(const Term& t) {
  std::vector<EquivMove> out;
  Path cur;
  collect_moves(t, cur, out);
  return out;
}

std::vector<EquivMember> equiv_class_paths(const Term& t, std::size_t cap) {
  std::vector<EquivMember> out{{t, {}}};
  std::unordered_set<std::string> seen{alpha_key(t)};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto& m : moves(out[i].term)) {
      Term u = *apply_move(out[i].term, m);
      if (!seen.insert(alpha_key(u)).second) continue;
      if (out.size() >= cap) throw EquivError("equivalence class exceeds cap of " + std::to_string(cap));
      auto path = out[i].from_start;
      path.push_back(m);
      out.push_back({u, std::move(path)});
    }
  }
  return out;
}

std::vector<Term> equiv_class(const Term& t, std::size_t cap) {
  std::vector<Term> out;
  for (auto& m : equiv_class_paths(t, cap)) out.push_back(m.term);
  return out;
}

Term equiv_canonical(const Term& t) {
  Canon c(t);
  return c.build(t);
}

std::string canonical_key(const Term& t) { return to_string(equiv_canonical(t)); }

bool equiv(const Term& a, const Term& b) { return canonical_key(a) == canonical_key(b); }

std::optional<std::vector<EquivMove>> equiv_path(const Term& from, const Term& to, std::size_t cap) {
  std::string target = alpha_key(to);
  if (alpha_key(from) == target) return std::vector<EquivMove>{};
  if (canonical_key(from) != canonical_key(to)) return std::nullopt;
  for (auto& m : equiv_class_paths(from, cap))
    if (alpha_key(m.term) == target) return m.from_start;
  return std::nullopt;
}

}  // namespace rcl
