#include "rcl/reduce.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "rcl/linearity.hpp"
#include "rcl/normal_form.hpp"

namespace rcl {

std::string rule_name(RuleId r) {
  switch (r) {
    case RuleId::Beta: return "beta";
    case RuleId::Gamma1: return "gamma1";
    case RuleId::Gamma2: return "gamma2";
    case RuleId::Gamma3: return "gamma3";
    case RuleId::Omega1: return "omega1";
    case RuleId::Omega2: return "omega2";
    case RuleId::Omega3: return "omega3";
    case RuleId::GammaOmega1: return "gamma-omega1";
    case RuleId::GammaOmega2: return "gamma-omega2";
  }
  return "?";
}

std::optional<RuleId> rule_from_name(const std::string& s) {
  for (RuleId r : kAllRules)
    if (rule_name(r) == s) return r;
  return std::nullopt;
}

std::optional<Strategy> strategy_from_name(const std::string& s) {
  if (s == "lo" || s == "leftmost-outermost") return Strategy::LeftmostOutermost;
  if (s == "ef" || s == "exhaustive-first") return Strategy::ExhaustiveFirst;
  return std::nullopt;
}

namespace {

bool free_in(const Term& t, const Name& x) {
  auto v = raw_free_vars(t);
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

bool rule_applies(const Term& r, RuleId rule) {
  switch (rule) {
    case RuleId::Beta: return r.kind() == Kind::App && r.fun().kind() == Kind::Abs;
    case RuleId::Gamma1: return r.kind() == Kind::Dup && r.body().kind() == Kind::Abs;
    case RuleId::Gamma2:
      return r.kind() == Kind::Dup && r.body().kind() == Kind::App && !free_in(r.body().arg(), r.left()) &&
             !free_in(r.body().arg(), r.right());
    case RuleId::Gamma3:
      return r.kind() == Kind::Dup && r.body().kind() == Kind::App && !free_in(r.body().fun(), r.left()) &&
             !free_in(r.body().fun(), r.right());
    case RuleId::Omega1:
      return r.kind() == Kind::Abs && r.body().kind() == Kind::Era && r.body().name() != r.name();
    case RuleId::Omega2: return r.kind() == Kind::App && r.fun().kind() == Kind::Era;
    case RuleId::Omega3: return r.kind() == Kind::App && r.arg().kind() == Kind::Era;
    case RuleId::GammaOmega1:
      return r.kind() == Kind::Dup && r.body().kind() == Kind::Era && r.body().name() != r.left() &&
             r.body().name() != r.right();
    case RuleId::GammaOmega2:
      return r.kind() == Kind::Dup && r.body().kind() == Kind::Era && r.body().name() == r.left();
  }
  return false;
}

Term contract(const Term& u, const Path& pos, RuleId rule, SubstTrace* beta_trace) {
  const Term& r = u.at(pos);
  if (!rule_applies(r, rule)) throw ReduceError(rule_name(rule) + " does not apply at " + path_to_string(pos));
  switch (rule) {
    case RuleId::Beta: {
      NameSupply supply(u);
      const Term& abs = r.fun();
      auto res = substitute_in(abs.body(), r.arg(), abs.name(), supply);
      if (beta_trace) *beta_trace = std::move(res.trace);
      return res.term;
    }
    case RuleId::Gamma1: {
      const Term& a = r.body();
      return Term::abs(a.name(), Term::dup(r.name(), r.left(), r.right(), a.body()));
    }
    case RuleId::Gamma2: {
      const Term& a = r.body();
      return Term::app(Term::dup(r.name(), r.left(), r.right(), a.fun()), a.arg());
    }
    case RuleId::Gamma3: {
      const Term& a = r.body();
      return Term::app(a.fun(), Term::dup(r.name(), r.left(), r.right(), a.arg()));
    }
    case RuleId::Omega1: {
      const Term& e = r.body();
      return Term::era(e.name(), Term::abs(r.name(), e.body()));
    }
    case RuleId::Omega2: {
      const Term& e = r.fun();
      return Term::era(e.name(), Term::app(e.body(), r.arg()));
    }
    case RuleId::Omega3: {
      const Term& e = r.arg();
      return Term::era(e.name(), Term::app(r.fun(), e.body()));
    }
    case RuleId::GammaOmega1: {
      const Term& e = r.body();
      return Term::era(e.name(), Term::dup(r.name(), r.left(), r.right(), e.body()));
    }
    case RuleId::GammaOmega2: return rename_free(r.body().body(), r.right(), r.name());
  }
  return r;
}

std::vector<ReductionStep> enumerate_redexes(const Term& t, std::size_t cap) {
  std::vector<ReductionStep> out;
  std::set<std::pair<RuleId, std::string>> seen;
  for (auto& m : equiv_class_paths(t, cap)) {
    for (auto& p : positions(m.term)) {
      const Term& r = m.term.at(p);
      for (RuleId rule : kAllRules) {
        if (!rule_applies(r, rule)) continue;
        SubstTrace trace;
        Term c = contract(m.term, p, rule, rule == RuleId::Beta ? &trace : nullptr);
        Term after = m.term.replace_at(p, c);
        if (!seen.insert({rule, canonical_key(after)}).second) continue;
        ReductionStep s{rule, m.from_start, p, t, m.term, after, std::nullopt};
        if (rule == RuleId::Beta) s.beta_trace = std::move(trace);
        out.push_back(std::move(s));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ReductionStep& a, const ReductionStep& b) {
    if (a.rule != b.rule) return a.rule < b.rule;
    return a.position < b.position;
  });
  return out;
}

namespace {

bool has_local_redex(const Term& t) {
  for (RuleId rule : kAllRules)
    if (rule_applies(t, rule)) return true;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (has_local_redex(t.child(i))) return true;
  return false;
}

}  // namespace

bool reducible(const Term& t, std::size_t cap) {
  if (has_local_redex(t)) return true;
  std::vector<Term> todo{t};
  std::unordered_set<std::string> seen{alpha_key(t)};
  for (std::size_t i = 0; i < todo.size(); ++i) {
    for (auto& m : moves(todo[i])) {
      Term u = *apply_move(todo[i], m);
      if (!seen.insert(alpha_key(u)).second) continue;
      if (has_local_redex(u)) return true;
      if (todo.size() >= cap) throw EquivError("equivalence class exceeds cap of " + std::to_string(cap));
      todo.push_back(std::move(u));
    }
  }
  return false;
}

Term reduce_step(const Term& t, const ReductionStep& s) {
  if (!alpha_eq(t, s.before)) throw ReduceError("stale step: term does not match the step's source");
  Term u;
  try {
    u = apply_moves(t, s.adjust);
  } catch (const EquivError& e) {
    throw ReduceError(std::string("stale step: ") + e.what());
  }
  const Term* r = &u;
  for (auto i : s.position) {
    if (i >= r->arity()) throw ReduceError("stale step: bad position " + path_to_string(s.position));
    r = &r->child(i);
  }
  if (!rule_applies(*r, s.rule))
    throw ReduceError("stale step: " + rule_name(s.rule) + " does not apply at " + path_to_string(s.position));
  return u.replace_at(s.position, contract(u, s.position, s.rule));
}

const ReductionStep& pick_step(const std::vector<ReductionStep>& steps, Strategy st) {
  if (steps.empty()) throw ReduceError("no redex to pick");
  if (st == Strategy::ExhaustiveFirst) return steps.front();
  const ReductionStep* best = &steps.front();
  for (auto& s : steps)
    if (s.position < best->position || (s.position == best->position && s.rule < best->rule)) best = &s;
  return *best;
}

NormalizeResult normalize(const Term& t, Strategy st, std::size_t max_steps) {
  NormalizeResult r{false, t, {}};
  while (true) {
    if (is_normal_form(r.term)) {
      r.normal = true;
      return r;
    }
    if (r.trace.size() >= max_steps) return r;
    auto steps = enumerate_redexes(r.term);
    if (steps.empty()) {
      r.normal = true;
      return r;
    }
    ReductionStep s = pick_step(steps, st);
    r.term = s.after;
    r.trace.push_back(std::move(s));
  }
}

}  // namespace rcl
