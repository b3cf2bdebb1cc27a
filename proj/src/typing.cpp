#include "rcl/typing.hpp"

#include <algorithm>
#include <unordered_map>

#include "rcl/equiv.hpp"
#include "rcl/linearity.hpp"
#include "rcl/normal_form.hpp"

namespace rcl {

std::string cert_verdict_name(CertVerdict v) {
  switch (v) {
    case CertVerdict::Certified: return "Certified";
    case CertVerdict::NotSN: return "NotSN";
    case CertVerdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

// ---- normal forms

Deriv nf_go(const Term& t, const std::vector<Inter>& pending, AtomSupply& atoms) {
  switch (t.kind()) {
    case Kind::Var: {
      Type ty = atoms.fresh();
      for (std::size_t i = pending.size(); i-- > 0;) ty = Type::arrow(pending[i], ty);
      return d_ax(t.name(), ty);
    }
    case Kind::Abs:
      if (!pending.empty()) throw DerivError("abstraction in function position");
      return d_arr_i(t.name(), nf_go(t.body(), {}, atoms));
    case Kind::Era: return d_thin(t.name(), nf_go(t.body(), pending, atoms));
    case Kind::Dup: return d_cont(t.name(), t.left(), t.right(), nf_go(t.body(), pending, atoms));
    case Kind::App: {
      std::vector<Term> spine;
      const Term* h = &t;
      while (h->kind() == Kind::App) {
        spine.push_back(h->arg());
        h = &h->fun();
      }
      std::reverse(spine.begin(), spine.end());
      std::vector<Deriv> ds;
      std::vector<Inter> more;
      for (auto& a : spine) {
        ds.push_back(nf_go(a, {}, atoms));
        more.push_back(single(ds.back()->type));
      }
      more.insert(more.end(), pending.begin(), pending.end());
      Deriv acc = nf_go(*h, more, atoms);
      for (auto& d : ds) acc = d_arr_e(acc, {d, d}, 0);
      return acc;
    }
    case Kind::Sub: break;
  }
  throw DerivError("explicit substitution in a normal form");
}

// ---- rewriting a derivation at a term position

using LocalFn = std::function<Deriv(const Deriv&)>;
using HoleFn = std::function<Term(const Term&)>;

Deriv rebuild(const Deriv& d, std::vector<Deriv> ps) {
  const Term& s = d->subject;
  switch (d->rule) {
    case DRule::ArrI: return d_arr_i(s.name(), ps[0]);
    case DRule::Cont: return d_cont(s.name(), s.left(), s.right(), ps[0]);
    case DRule::Thin: return d_thin(s.name(), ps[0]);
    case DRule::ArrE: {
      std::vector<Deriv> args(ps.begin() + 1, ps.end());
      return d_arr_e(ps[0], std::move(args), d->witness);
    }
    case DRule::Subst: {
      std::vector<Deriv> args(ps.begin() + 1, ps.end());
      return d_subst(s.name(), ps[0], std::move(args), d->witness);
    }
    default: throw DerivError("cannot rebuild " + drule_name(d->rule));
  }
}

struct Mapper {
  const Path& path;
  const LocalFn& f;
  const HoleFn* hole;
  std::unordered_map<const DNode*, Deriv> memo;

  Deriv go(const Deriv& d, std::size_t i) {
    auto it = memo.find(d.get());
    if (it != memo.end()) return it->second;
    Deriv r = visit(d, i);
    memo.emplace(d.get(), r);
    return r;
  }

  Deriv visit(const Deriv& d, std::size_t i) {
    if (d->rule == DRule::Hole) {
      if (!hole) throw DerivError("unexpected hole at " + to_string(d->subject));
      Path rest(path.begin() + i, path.end());
      return d_hole(d->subject.replace_at(rest, (*hole)(d->subject.at(rest))));
    }
    if (i == path.size()) return f(d);
    std::uint8_t c = path[i];
    std::vector<Deriv> ps = d->premises;
    switch (d->rule) {
      case DRule::ArrI:
      case DRule::Cont:
      case DRule::Thin:
        if (c != 0) throw DerivError("position does not match the derivation");
        ps[0] = go(ps[0], i + 1);
        break;
      case DRule::ArrE:
      case DRule::Subst:
        if (c == 0) {
          ps[0] = go(ps[0], i + 1);
        } else {
          for (std::size_t k = 1; k < ps.size(); ++k) ps[k] = go(ps[k], i + 1);
        }
        break;
      default: throw DerivError("position does not match the derivation");
    }
    return rebuild(d, std::move(ps));
  }
};

Deriv map_at(const Deriv& d, const Path& p, const LocalFn& f, const HoleFn* hole = nullptr) {
  Mapper m{p, f, hole, {}};
  return m.go(d, 0);
}

void expect(const Deriv& d, DRule r, const char* where) {
  if (d->rule != r)
    throw DerivError(std::string(where) + ": expected " + drule_name(r) + ", found " + drule_name(d->rule));
}

std::vector<Deriv> args_of(const Deriv& d) {
  return std::vector<Deriv>(d->premises.begin() + 1, d->premises.end());
}

// Takes typings from `pool` whose types make up `want`.
std::vector<Deriv> take_matching(std::vector<Deriv>& pool, const Inter& want) {
  std::vector<Deriv> out;
  for (auto& t : want) {
    auto it = std::find_if(pool.begin(), pool.end(), [&](const Deriv& d) { return d->type == t; });
    if (it == pool.end()) throw DerivError("no argument typing of type " + to_string(t));
    out.push_back(*it);
    pool.erase(it);
  }
  return out;
}

// Argument premises for a Subst/ArrE with the given counted typings; the
// witness copies the first, or is `fallback` when there are none.
std::vector<Deriv> with_witness(std::vector<Deriv> counted, const Deriv& fallback) {
  std::vector<Deriv> r{counted.empty() ? fallback : counted[0]};
  r.insert(r.end(), counted.begin(), counted.end());
  return r;
}

Inter basis_at(const Deriv& d, const Name& x) {
  auto it = d->basis.find(x);
  if (it == d->basis.end()) throw DerivError(x + " missing from basis");
  return it->second;
}

std::vector<std::pair<Name, Name>> inverse(const Renaming& r) {
  std::vector<std::pair<Name, Name>> v;
  for (auto& [a, b] : r) v.push_back({b, a});
  return v;
}

// ---- substitution steps

Deriv subst_forward(const SubstStep& st, const Deriv& d, const Term& redex) {
  expect(d, DRule::Subst, "substitution step");
  const Name& x = redex.name();
  const Deriv& b = d->main();
  auto args = args_of(d);
  std::size_t w = d->witness;
  const Deriv& d0 = args[w];
  switch (st.rule) {
    case SubstRule::Var: {
      auto c = counted_args(*d);
      if (c.size() != 1) throw DerivError("var step: expected one counted argument");
      return c[0];
    }
    case SubstRule::Abs:
      expect(b, DRule::ArrI, "abs step");
      return d_arr_i(redex.body().name(), d_subst(x, b->main(), args, w));
    case SubstRule::AppLeft:
      expect(b, DRule::ArrE, "app-left step");
      return d_arr_e(d_subst(x, b->main(), args, w), args_of(b), b->witness);
    case SubstRule::AppRight: {
      expect(b, DRule::ArrE, "app-right step");
      auto pool = counted_args(*d);
      std::vector<Deriv> fresh;
      for (auto& q : counted_args(*b)) {
        auto mine = take_matching(pool, basis_at(q, x));
        fresh.push_back(d_subst(x, q, with_witness(mine, d0), 0));
      }
      if (!pool.empty()) throw DerivError("app-right step: unused argument typings");
      if (fresh.empty()) {
        // only the witness types the argument; some typing of it is needed
        Term p = Term::sub(redex.body().arg(), redex.replacement(), x);
        return d_arr_e(b->main(), {d_hole(p)}, 0);
      }
      return d_arr_e(b->main(), with_witness(fresh, nullptr), 0);
    }
    case SubstRule::EraOther:
      expect(b, DRule::Thin, "era-other step");
      return d_thin(redex.body().name(), d_subst(x, b->main(), args, w));
    case SubstRule::EraHit: {
      expect(b, DRule::Thin, "era-hit step");
      Deriv r = b->main();
      auto fv = raw_free_vars(redex.replacement());
      for (std::size_t i = fv.size(); i-- > 0;) r = d_thin(fv[i], r);
      return r;
    }
    case SubstRule::DupOther:
      expect(b, DRule::Cont, "dup-other step");
      return d_cont(redex.body().name(), redex.body().left(), redex.body().right(), d_subst(x, b->main(), args, w));
    case SubstRule::DupHit: {
      expect(b, DRule::Cont, "dup-hit step");
      const Term& dup = redex.body();
      const Deriv& m = b->main();
      auto pool = counted_args(*d);
      auto s1 = take_matching(pool, basis_at(m, dup.left()));
      auto s2 = take_matching(pool, basis_at(m, dup.right()));
      for (auto& e : s1) e = rename_deriv(e, st.first);
      for (auto& e : s2) e = rename_deriv(e, st.second);
      Deriv inner = d_subst(dup.left(), m, with_witness(s1, rename_deriv(d0, st.first)), 0);
      Deriv r = d_subst(dup.right(), inner, with_witness(s2, rename_deriv(d0, st.second)), 0);
      auto fv = raw_free_vars(redex.replacement());
      std::map<Name, Name> m1(st.first.begin(), st.first.end()), m2(st.second.begin(), st.second.end());
      for (std::size_t i = fv.size(); i-- > 0;) r = d_cont(fv[i], m1.at(fv[i]), m2.at(fv[i]), r);
      return r;
    }
  }
  throw DerivError("unknown substitution step");
}

Deriv subst_inverse(const SubstStep& st, const Deriv& d, const Term& redex, const Oracle& typing) {
  const Name& x = redex.name();
  const Term& body = redex.body();
  switch (st.rule) {
    case SubstRule::Var: return d_subst(x, d_ax(x, d->type), {d, d}, 0);
    case SubstRule::Abs: {
      expect(d, DRule::ArrI, "abs step");
      const Deriv& s = d->main();
      expect(s, DRule::Subst, "abs step");
      return d_subst(x, d_arr_i(body.name(), s->main()), args_of(s), s->witness);
    }
    case SubstRule::AppLeft: {
      expect(d, DRule::ArrE, "app-left step");
      const Deriv& s = d->main();
      expect(s, DRule::Subst, "app-left step");
      return d_subst(x, d_arr_e(s->main(), args_of(d), d->witness), args_of(s), s->witness);
    }
    case SubstRule::AppRight: {
      expect(d, DRule::ArrE, "app-right step");
      std::vector<Deriv> qs, counted;
      for (std::size_t i = 0; i < d->arg_count(); ++i) {
        const Deriv& s = d->arg(i);
        expect(s, DRule::Subst, "app-right step");
        qs.push_back(s->main());
        if (i == d->witness) continue;
        auto c = counted_args(*s);
        counted.insert(counted.end(), c.begin(), c.end());
      }
      const Deriv& ws = d->arg(d->witness);
      Deriv fallback = ws->arg(ws->witness);
      return d_subst(x, d_arr_e(d->main(), qs, d->witness), with_witness(counted, fallback), 0);
    }
    case SubstRule::EraOther: {
      expect(d, DRule::Thin, "era-other step");
      const Deriv& s = d->main();
      expect(s, DRule::Subst, "era-other step");
      return d_subst(x, d_thin(body.name(), s->main()), args_of(s), s->witness);
    }
    case SubstRule::EraHit: {
      Deriv m = d;
      for (std::size_t i = 0; i < raw_free_vars(redex.replacement()).size(); ++i) {
        expect(m, DRule::Thin, "era-hit step");
        m = m->main();
      }
      auto n = typing ? typing(redex.replacement()) : std::nullopt;
      if (!n) throw DerivError("no typing available for " + to_string(redex.replacement()));
      return d_subst(x, d_thin(x, m), {*n}, 0);
    }
    case SubstRule::DupOther: {
      expect(d, DRule::Cont, "dup-other step");
      const Deriv& s = d->main();
      expect(s, DRule::Subst, "dup-other step");
      return d_subst(x, d_cont(body.name(), body.left(), body.right(), s->main()), args_of(s), s->witness);
    }
    case SubstRule::DupHit: {
      Deriv outer = d;
      for (std::size_t i = 0; i < raw_free_vars(redex.replacement()).size(); ++i) {
        expect(outer, DRule::Cont, "dup-hit step");
        outer = outer->main();
      }
      expect(outer, DRule::Subst, "dup-hit step");
      const Deriv& inner = outer->main();
      expect(inner, DRule::Subst, "dup-hit step");
      auto i1 = inverse(st.first), i2 = inverse(st.second);
      std::vector<Deriv> counted;
      for (auto& e : counted_args(*inner)) counted.push_back(rename_deriv(e, i1));
      for (auto& e : counted_args(*outer)) counted.push_back(rename_deriv(e, i2));
      Deriv fallback = rename_deriv(inner->arg(inner->witness), i1);
      return d_subst(x, d_cont(x, body.left(), body.right(), inner->main()), with_witness(counted, fallback), 0);
    }
  }
  throw DerivError("unknown substitution step");
}

Deriv fill_holes(const Deriv& d, const Oracle& fill, std::unordered_map<const DNode*, Deriv>& memo) {
  auto it = memo.find(d.get());
  if (it != memo.end()) return it->second;
  Deriv r;
  if (d->rule == DRule::Hole) {
    auto got = fill ? fill(d->subject) : std::nullopt;
    if (!got) throw DerivError("no typing available for " + to_string(d->subject));
    if (!((*got)->subject == d->subject)) got = retarget(*got, d->subject);
    r = *got;
  } else if (!has_hole(d)) {
    r = d;
  } else {
    std::vector<Deriv> ps;
    for (auto& p : d->premises) ps.push_back(fill_holes(p, fill, memo));
    r = rebuild(d, std::move(ps));
  }
  memo.emplace(d.get(), r);
  return r;
}

// ---- reduction rules

Deriv rule_forward(RuleId rule, const Deriv& d, const Term& redex, const SubstTrace* trace, const Oracle& fill) {
  switch (rule) {
    case RuleId::Beta: {
      expect(d, DRule::ArrE, "beta");
      const Deriv& f = d->main();
      expect(f, DRule::ArrI, "beta");
      Deriv s = d_subst(redex.fun().name(), f->main(), args_of(d), d->witness);
      return push_subst(s, *trace, fill);
    }
    case RuleId::Gamma1: {
      expect(d, DRule::Cont, "gamma1");
      const Deriv& a = d->main();
      expect(a, DRule::ArrI, "gamma1");
      return d_arr_i(redex.body().name(), d_cont(redex.name(), redex.left(), redex.right(), a->main()));
    }
    case RuleId::Gamma2: {
      expect(d, DRule::Cont, "gamma2");
      const Deriv& a = d->main();
      expect(a, DRule::ArrE, "gamma2");
      return d_arr_e(d_cont(redex.name(), redex.left(), redex.right(), a->main()), args_of(a), a->witness);
    }
    case RuleId::Gamma3: {
      expect(d, DRule::Cont, "gamma3");
      const Deriv& a = d->main();
      expect(a, DRule::ArrE, "gamma3");
      std::vector<Deriv> qs;
      for (auto& q : args_of(a)) qs.push_back(d_cont(redex.name(), redex.left(), redex.right(), q));
      return d_arr_e(a->main(), qs, a->witness);
    }
    case RuleId::Omega1: {
      expect(d, DRule::ArrI, "omega1");
      const Deriv& e = d->main();
      expect(e, DRule::Thin, "omega1");
      return d_thin(redex.body().name(), d_arr_i(redex.name(), e->main()));
    }
    case RuleId::Omega2: {
      expect(d, DRule::ArrE, "omega2");
      const Deriv& e = d->main();
      expect(e, DRule::Thin, "omega2");
      return d_thin(redex.fun().name(), d_arr_e(e->main(), args_of(d), d->witness));
    }
    case RuleId::Omega3: {
      expect(d, DRule::ArrE, "omega3");
      std::vector<Deriv> qs;
      for (auto& q : args_of(d)) {
        expect(q, DRule::Thin, "omega3");
        qs.push_back(q->main());
      }
      return d_thin(redex.arg().name(), d_arr_e(d->main(), qs, d->witness));
    }
    case RuleId::GammaOmega1: {
      expect(d, DRule::Cont, "gamma-omega1");
      const Deriv& e = d->main();
      expect(e, DRule::Thin, "gamma-omega1");
      return d_thin(redex.body().name(), d_cont(redex.name(), redex.left(), redex.right(), e->main()));
    }
    case RuleId::GammaOmega2: {
      expect(d, DRule::Cont, "gamma-omega2");
      const Deriv& e = d->main();
      expect(e, DRule::Thin, "gamma-omega2");
      return rename_deriv(e->main(), {{redex.right(), redex.name()}});
    }
  }
  throw DerivError("unknown rule");
}

Deriv rule_inverse(RuleId rule, const Deriv& d, const Term& redex, const SubstTrace* trace, const Oracle& typing) {
  switch (rule) {
    case RuleId::Beta: {
      const Name& x = redex.fun().name();
      Term start = Term::sub(redex.fun().body(), redex.arg(), x);
      Deriv s = pull_subst(d, start, *trace, typing);
      return d_arr_e(d_arr_i(x, s->main()), args_of(s), s->witness);
    }
    case RuleId::Gamma1: {
      expect(d, DRule::ArrI, "gamma1");
      const Deriv& c = d->main();
      expect(c, DRule::Cont, "gamma1");
      return d_cont(redex.name(), redex.left(), redex.right(), d_arr_i(redex.body().name(), c->main()));
    }
    case RuleId::Gamma2: {
      expect(d, DRule::ArrE, "gamma2");
      const Deriv& c = d->main();
      expect(c, DRule::Cont, "gamma2");
      return d_cont(redex.name(), redex.left(), redex.right(), d_arr_e(c->main(), args_of(d), d->witness));
    }
    case RuleId::Gamma3: {
      expect(d, DRule::ArrE, "gamma3");
      std::vector<Deriv> qs;
      for (auto& q : args_of(d)) {
        expect(q, DRule::Cont, "gamma3");
        qs.push_back(q->main());
      }
      return d_cont(redex.name(), redex.left(), redex.right(), d_arr_e(d->main(), qs, d->witness));
    }
    case RuleId::Omega1: {
      expect(d, DRule::Thin, "omega1");
      const Deriv& a = d->main();
      expect(a, DRule::ArrI, "omega1");
      return d_arr_i(redex.name(), d_thin(redex.body().name(), a->main()));
    }
    case RuleId::Omega2: {
      expect(d, DRule::Thin, "omega2");
      const Deriv& a = d->main();
      expect(a, DRule::ArrE, "omega2");
      return d_arr_e(d_thin(redex.fun().name(), a->main()), args_of(a), a->witness);
    }
    case RuleId::Omega3: {
      expect(d, DRule::Thin, "omega3");
      const Deriv& a = d->main();
      expect(a, DRule::ArrE, "omega3");
      std::vector<Deriv> qs;
      for (auto& q : args_of(a)) qs.push_back(d_thin(redex.arg().name(), q));
      return d_arr_e(a->main(), qs, a->witness);
    }
    case RuleId::GammaOmega1: {
      expect(d, DRule::Thin, "gamma-omega1");
      const Deriv& c = d->main();
      expect(c, DRule::Cont, "gamma-omega1");
      return d_cont(redex.name(), redex.left(), redex.right(), d_thin(redex.body().name(), c->main()));
    }
    case RuleId::GammaOmega2: {
      Deriv m = rename_deriv(d, {{redex.name(), redex.right()}});
      return d_cont(redex.name(), redex.left(), redex.right(), d_thin(redex.left(), m));
    }
  }
  throw DerivError("unknown rule");
}

// Re-wraps the binder prefix at a move position to follow the moved term.
Deriv rewrap(const Deriv& d, const Term& after, int levels) {
  std::vector<Deriv> peeled{d};
  for (int i = 0; i < levels; ++i) {
    const Deriv& top = peeled.back();
    if (top->rule != DRule::Thin && top->rule != DRule::Cont) throw DerivError("structural move over " + drule_name(top->rule));
    peeled.push_back(top->main());
  }
  std::vector<const Term*> binders{&after};
  for (int i = 1; i < levels; ++i) binders.push_back(&binders.back()->body());
  Deriv r = peeled.back();
  for (int i = levels; i-- > 0;) {
    const Term& b = *binders[std::size_t(i)];
    r = b.kind() == Kind::Era ? d_thin(b.name(), r) : d_cont(b.name(), b.left(), b.right(), r);
  }
  return r;
}

int move_levels(Axiom a) { return a == Axiom::SwapDup ? 1 : 2; }

void alpha_map(const Term& a, const Term& b, std::vector<std::pair<Name, Name>>& out) {
  auto add = [&](const Name& x, const Name& y) {
    if (x != y) out.push_back({x, y});
  };
  switch (a.kind()) {
    case Kind::Abs: add(a.name(), b.name()); break;
    case Kind::Dup:
      add(a.left(), b.left());
      add(a.right(), b.right());
      break;
    case Kind::Sub: add(a.name(), b.name()); break;
    default: break;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) alpha_map(a.child(i), b.child(i), out);
}

}  // namespace

Deriv nf_type(const Term& t) {
  if (!is_normal_form(t)) throw DerivError("not a normal form: " + to_string(t));
  AtomSupply atoms;
  return nf_go(t, {}, atoms);
}

Deriv push_subst(const Deriv& d, const SubstTrace& trace, const Oracle& fill) {
  Term cur = d->subject;
  Deriv r = d;
  for (auto& st : trace) {
    Term redex = cur.at(st.position);
    LocalFn f = [&](const Deriv& n) { return subst_forward(st, n, redex); };
    HoleFn h = [&](const Term& t) {
      SubstStep local = st;
      local.position.clear();
      return replay_step(t, local);
    };
    r = map_at(r, st.position, f, &h);
    cur = replay_step(cur, st);
  }
  std::unordered_map<const DNode*, Deriv> memo;
  return fill_holes(r, fill, memo);
}

Deriv pull_subst(const Deriv& d, const Term& start, const SubstTrace& trace, const Oracle& typing) {
  std::vector<Term> terms{start};
  for (auto& st : trace) terms.push_back(replay_step(terms.back(), st));
  if (!(terms.back() == d->subject)) throw DerivError("derivation subject does not match the trace result");
  Deriv r = d;
  for (std::size_t k = trace.size(); k-- > 0;) {
    const SubstStep& st = trace[k];
    Term redex = terms[k].at(st.position);
    LocalFn f = [&](const Deriv& n) { return subst_inverse(st, n, redex, typing); };
    r = map_at(r, st.position, f);
  }
  return r;
}

Deriv subst_lemma_apply(const Deriv& d, const Name& x, const std::vector<Deriv>& ws, std::size_t witness,
                        const Oracle& fill) {
  Deriv s = d_subst(x, d, ws, witness);
  NameSupply supply(s->subject);
  auto r = eval_subst(s->subject, supply);
  return push_subst(s, r.trace, fill);
}

Deriv apply_moves_deriv(const Deriv& d, const std::vector<EquivMove>& moves) {
  Deriv r = d;
  Term cur = d->subject;
  for (auto& m : moves) {
    auto next = apply_move(cur, m);
    if (!next) throw DerivError("structural move does not apply");
    const Term& after = next->at(m.position);
    LocalFn f = [&](const Deriv& n) { return rewrap(n, after, move_levels(m.axiom)); };
    r = map_at(r, m.position, f);
    cur = *next;
  }
  return r;
}

Deriv retarget(const Deriv& d, const Term& t) {
  if (d->subject == t) return d;
  auto path = equiv_path(d->subject, t);
  if (!path) throw DerivError("derivation subject is not equivalent to " + to_string(t));
  Deriv r = apply_moves_deriv(d, *path);
  std::vector<std::pair<Name, Name>> map;
  alpha_map(r->subject, t, map);
  r = rename_deriv(r, map);
  if (!(r->subject == t)) throw DerivError("retargeting failed for " + to_string(t));
  return r;
}

Deriv transport_forward(const Deriv& d0, const ReductionStep& s, const Oracle& fill) {
  Deriv d = retarget(d0, s.before);
  d = apply_moves_deriv(d, s.adjust);
  if (!(d->subject == s.adjusted)) d = retarget(d, s.adjusted);
  const Term& redex = s.adjusted.at(s.position);
  const SubstTrace* trace = s.beta_trace ? &*s.beta_trace : nullptr;
  Oracle o = fill ? fill : Oracle([](const Term& t) { return certify_sn(t).derivation; });
  LocalFn f = [&](const Deriv& n) { return rule_forward(s.rule, n, redex, trace, o); };
  Deriv r = map_at(d, s.position, f);
  if (!(r->subject == s.after)) r = retarget(r, s.after);
  return r;
}

Deriv expand_step(const Deriv& d0, const ReductionStep& s, const Oracle& typing) {
  Deriv d = retarget(d0, s.after);
  const Term& redex = s.adjusted.at(s.position);
  const SubstTrace* trace = s.beta_trace ? &*s.beta_trace : nullptr;
  LocalFn f = [&](const Deriv& n) { return rule_inverse(s.rule, n, redex, trace, typing); };
  Deriv r = map_at(d, s.position, f);
  // undo the structural adjustment; every move is its own inverse
  std::vector<Term> terms{s.before};
  for (auto& m : s.adjust) terms.push_back(*apply_move(terms.back(), m));
  for (std::size_t i = s.adjust.size(); i-- > 0;) {
    const EquivMove& m = s.adjust[i];
    const Term& back = terms[i].at(m.position);
    LocalFn g = [&](const Deriv& n) { return rewrap(n, back, move_levels(m.axiom)); };
    r = map_at(r, m.position, g);
  }
  return r;
}

namespace {

class Certifier {
 public:
  explicit Certifier(std::size_t limit) : limit_(limit) {}

  std::optional<Deriv> run(const Term& t) {
    if (++calls_ > limit_) throw Exhausted();
    std::string key = canonical_key(t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return retarget(it->second, t);
    Deriv d;
    if (is_normal_form(t)) {
      d = nf_type(t);
    } else {
      auto steps = enumerate_redexes(t);
      const ReductionStep& s = pick_step(steps, Strategy::LeftmostOutermost);
      auto next = run(s.after);
      if (!next) return std::nullopt;
      d = expand_step(*next, s, [this](const Term& n) { return run(n); });
    }
    memo_.emplace(key, d);
    return d;
  }

  struct Exhausted {};

 private:
  std::size_t limit_;
  std::size_t calls_ = 0;
  std::unordered_map<std::string, Deriv> memo_;
};

}  // namespace

CertifyResult certify_sn(const Term& t, Budget b) {
  CertifyResult r{CertVerdict::Unknown, std::nullopt, classify_sn(t, b), {}};
  if (r.sn.verdict == SnVerdict::NonSN) {
    r.verdict = CertVerdict::NotSN;
    return r;
  }
  if (r.sn.verdict == SnVerdict::Unknown) {
    r.note = "reduction graph budget exhausted";
    return r;
  }
  Certifier c(b.steps);
  try {
    r.derivation = c.run(t);
  } catch (const Certifier::Exhausted&) {
    r.note = "certification budget exhausted";
    return r;
  }
  if (r.derivation) r.verdict = CertVerdict::Certified;
  return r;
}

}  // namespace rcl
