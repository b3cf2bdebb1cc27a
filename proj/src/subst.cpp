#include "rcl/subst.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "rcl/linearity.hpp"
#include "rcl/parse.hpp"

namespace rcl {

std::string subst_rule_name(SubstRule r) {
  switch (r) {
    case SubstRule::Var: return "var";
    case SubstRule::Abs: return "abs";
    case SubstRule::AppLeft: return "app-left";
    case SubstRule::AppRight: return "app-right";
    case SubstRule::EraOther: return "era-other";
    case SubstRule::EraHit: return "era-hit";
    case SubstRule::DupOther: return "dup-other";
    case SubstRule::DupHit: return "dup-hit";
  }
  return "?";
}

std::size_t measure(const Term& s) {
  switch (s.kind()) {
    case Kind::Var: return 1;
    case Kind::App: return measure(s.fun()) + measure(s.arg()) + 1;
    case Kind::Sub: return measure(s.body());
    default: return measure(s.body()) + 1;
  }
}

namespace {

void collect_mul(const Term& s, Multiset& out) {
  if (!s.has_sub()) return;
  if (s.kind() == Kind::Sub) {
    out.push_back(measure(s.body()));
    collect_mul(s.body(), out);
    return;
  }
  for (std::size_t i = 0; i < s.arity(); ++i) collect_mul(s.child(i), out);
}

bool contains(const std::vector<Name>& v, const Name& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void collect_redexes(const Term& s, Path& cur, std::vector<Path>& out) {
  if (!s.has_sub()) return;
  if (s.kind() == Kind::Sub && s.body().kind() != Kind::Sub) out.push_back(cur);
  for (std::size_t i = 0; i < s.arity(); ++i) {
    cur.push_back(std::uint8_t(i));
    collect_redexes(s.child(i), cur, out);
    cur.pop_back();
  }
}

// Names of a substitution-free term: free ones in list order, then binders.
std::vector<Name> renaming_order(const Term& n) {
  std::vector<Name> v = raw_free_vars(n);
  for (auto& b : binders(n)) v.push_back(b);
  return v;
}

Renaming fresh_renaming(const Term& n, NameSupply& supply) {
  Renaming r;
  for (auto& x : renaming_order(n)) r.push_back({x, supply.fresh(x)});
  return r;
}

Term stack(const std::vector<Name>& xs, const Term& body, const std::function<Term(std::size_t, Term)>& wrap) {
  Term t = body;
  for (std::size_t i = xs.size(); i-- > 0;) t = wrap(i, t);
  return t;
}

Term contract(const Term& redex, SubstRule rule, const Renaming& r1, const Renaming& r2) {
  const Term& b = redex.body();
  const Term& n = redex.replacement();
  const Name& x = redex.name();
  switch (rule) {
    case SubstRule::Var: return n;
    case SubstRule::Abs: return Term::abs(b.name(), Term::sub(b.body(), n, x));
    case SubstRule::AppLeft: return Term::app(Term::sub(b.fun(), n, x), b.arg());
    case SubstRule::AppRight: return Term::app(b.fun(), Term::sub(b.arg(), n, x));
    case SubstRule::EraOther: return Term::era(b.name(), Term::sub(b.body(), n, x));
    case SubstRule::EraHit: {
      auto fv = raw_free_vars(n);
      return stack(fv, b.body(), [&](std::size_t i, Term t) { return Term::era(fv[i], t); });
    }
    case SubstRule::DupOther: return Term::dup(b.name(), b.left(), b.right(), Term::sub(b.body(), n, x));
    case SubstRule::DupHit: {
      Term n1 = rename_all(n, r1);
      Term n2 = rename_all(n, r2);
      Term inner = Term::sub(Term::sub(b.body(), n1, b.left()), n2, b.right());
      auto fv = raw_free_vars(n);
      auto f1 = raw_free_vars(n1);
      auto f2 = raw_free_vars(n2);
      return stack(fv, inner, [&](std::size_t i, Term t) { return Term::dup(fv[i], f1[i], f2[i], t); });
    }
  }
  return redex;
}

}  // namespace

Multiset mul_multiset(const Term& s) {
  Multiset m;
  collect_mul(s, m);
  std::sort(m.begin(), m.end(), std::greater<>());
  return m;
}

bool multiset_greater(const Multiset& a, const Multiset& b) {
  std::map<std::size_t, long> diff;
  for (auto v : a) ++diff[v];
  for (auto v : b) --diff[v];
  // a >> b iff a != b and every element b has in excess is dominated by
  // some element a has in excess.
  bool any = false;
  std::size_t max_a = 0;
  bool have_a = false;
  for (auto& [v, c] : diff) {
    if (c != 0) any = true;
    if (c > 0) {
      have_a = true;
      max_a = std::max(max_a, v);
    }
  }
  if (!any) return false;
  for (auto& [v, c] : diff)
    if (c < 0 && (!have_a || v >= max_a)) return false;
  return true;
}

std::vector<Path> subst_redexes(const Term& s) {
  std::vector<Path> out;
  Path cur;
  collect_redexes(s, cur, out);
  return out;
}

std::optional<SubstRule> subst_rule_at(const Term& s, const Path& pos) {
  const Term& r = s.at(pos);
  if (r.kind() != Kind::Sub) return std::nullopt;
  const Term& b = r.body();
  const Name& x = r.name();
  switch (b.kind()) {
    case Kind::Var:
      if (b.name() == x) return SubstRule::Var;
      return std::nullopt;
    case Kind::Abs: return SubstRule::Abs;
    case Kind::App:
      if (contains(raw_free_vars(b.fun()), x)) return SubstRule::AppLeft;
      if (contains(raw_free_vars(b.arg()), x)) return SubstRule::AppRight;
      return std::nullopt;
    case Kind::Era: return b.name() == x ? SubstRule::EraHit : SubstRule::EraOther;
    case Kind::Dup: return b.name() == x ? SubstRule::DupHit : SubstRule::DupOther;
    case Kind::Sub: return std::nullopt;
  }
  return std::nullopt;
}

SubstStep step_subst(const Term& s, const Path& pos, NameSupply& supply, Term& out) {
  auto rule = subst_rule_at(s, pos);
  if (!rule) throw SubstError("no substitution rule applies at " + path_to_string(pos));
  const Term& redex = s.at(pos);
  SubstStep st{*rule, pos, mul_multiset(s), {}, {}, {}};
  if (*rule == SubstRule::DupHit) {
    st.first = fresh_renaming(redex.replacement(), supply);
    st.second = fresh_renaming(redex.replacement(), supply);
  }
  out = s.replace_at(pos, contract(redex, *rule, st.first, st.second));
  st.after = mul_multiset(out);
  return st;
}

Term step_subst(const Term& s, const Path& pos) {
  NameSupply supply(s);
  Term out;
  step_subst(s, pos, supply, out);
  return out;
}

Term replay_step(const Term& s, const SubstStep& step) {
  auto rule = subst_rule_at(s, step.position);
  if (!rule || *rule != step.rule)
    throw SubstError("trace step " + subst_rule_name(step.rule) + " does not apply at " +
                     path_to_string(step.position));
  return s.replace_at(step.position, contract(s.at(step.position), step.rule, step.first, step.second));
}

Term replay(Term s, const SubstTrace& trace) {
  for (auto& st : trace) s = replay_step(s, st);
  return s;
}

namespace {

// First Sub node in preorder whose body is substitution-free.
bool innermost(const Term& s, Path& cur) {
  if (!s.has_sub()) return false;
  if (s.kind() == Kind::Sub && !s.body().has_sub()) return true;
  for (std::size_t i = 0; i < s.arity(); ++i) {
    cur.push_back(std::uint8_t(i));
    if (innermost(s.child(i), cur)) return true;
    cur.pop_back();
  }
  return false;
}

}  // namespace

SubstResult eval_subst(const Term& s, NameSupply& supply) {
  SubstResult r{s, {}};
  supply.reserve(s);
  while (r.term.has_sub()) {
    Path p;
    innermost(r.term, p);
    Term next;
    r.trace.push_back(step_subst(r.term, p, supply, next));
    r.term = next;
  }
  return r;
}

SubstResult eval_subst(const Term& s) {
  if (!is_sterm(s)) throw SubstError("eval_subst: ill-formed term");
  NameSupply supply(s);
  return eval_subst(s, supply);
}

namespace {

void check_pre(const Term& m, const Term& n, const Name& x) {
  auto rm = check_linear(m);
  if (!rm.ok) throw SubstError("substitute: body is not linear (" + rm.violations[0].message + ")");
  auto rn = check_linear(n);
  if (!rn.ok) throw SubstError("substitute: replacement is not linear (" + rn.violations[0].message + ")");
  auto fm = raw_free_vars(m);
  if (!contains(fm, x)) throw SubstError("substitute: " + x + " is not free in the body");
  for (auto& y : raw_free_vars(n))
    if (y != x && contains(fm, y))
      throw SubstError("substitute: " + y + " is free in both body and replacement");
}

}  // namespace

SubstResult substitute_in(const Term& m, const Term& n, const Name& x, NameSupply& supply) {
  return eval_subst(Term::sub(m, n, x), supply);
}

Term substitute(const Term& m, const Term& n, const Name& x) {
  check_pre(m, n, x);
  Term mm = freshen(m), nn = freshen(n);
  NameSupply supply(mm);
  supply.reserve(nn);
  // keep binders of each side away from every name of the other
  auto clash = [&](const Term& t, const Term& other) {
    auto names = all_names(other);
    Renaming r;
    for (auto& b : binders(t))
      if (names.count(b)) r.push_back({b, supply.fresh(b)});
    return rename_all(t, r);
  };
  nn = clash(nn, mm);
  mm = clash(mm, nn);
  return substitute_in(mm, nn, x, supply).term;
}

Term substitute_many(const Term& m, const std::vector<std::pair<Term, Name>>& pairs) {
  std::set<Name> targets;
  for (auto& [n, x] : pairs) {
    if (!targets.insert(x).second) throw SubstError("substitute_many: repeated target " + x);
    check_pre(m, n, x);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      for (auto& y : raw_free_vars(pairs[i].first))
        if (contains(raw_free_vars(pairs[j].first), y))
          throw SubstError("substitute_many: replacements share free variable " + y);
  Term t = m;
  for (auto& [n, x] : pairs) t = substitute(t, n, x);
  return t;
}

}  // namespace rcl
