#include "rcl/normal_form.hpp"

#include <algorithm>

namespace rcl {

namespace {

bool nf(const Term& t);

bool contains(const std::vector<Name>& v, const Name& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Application in normal form: head is neither an abstraction nor an
// erasure, argument is not an erasure.
bool app_nf(const Term& t) {
  const Term& f = t.fun();
  const Term& a = t.arg();
  if (f.kind() == Kind::Abs || f.kind() == Kind::Era || a.kind() == Kind::Era) return false;
  return nf(f) && nf(a);
}

bool dup_run_nf(const Term& t) {
  std::vector<const Term*> run;
  const Term* cur = &t;
  for (; cur->kind() == Kind::Dup; cur = &cur->body()) run.push_back(cur);
  if (cur->kind() != Kind::App || !app_nf(*cur)) return false;
  auto fp = raw_free_vars(cur->fun());
  auto fq = raw_free_vars(cur->arg());
  for (auto* d : run) {
    for (auto* e : run)
      if (e->left() == d->name() || e->right() == d->name()) return false;
    bool lp = contains(fp, d->left()), rp = contains(fp, d->right());
    bool lq = contains(fq, d->left()), rq = contains(fq, d->right());
    if (!((lp && rq) || (rp && lq))) return false;
  }
  return true;
}

bool nf(const Term& t) {
  switch (t.kind()) {
    case Kind::Var: return true;
    case Kind::Abs: {
      const Term& b = t.body();
      if (b.kind() == Kind::Era) return b.name() == t.name() && b.body().kind() != Kind::Era && nf(b.body());
      return nf(b);
    }
    case Kind::App: return app_nf(t);
    case Kind::Era: {
      const Term* cur = &t;
      while (cur->kind() == Kind::Era) cur = &cur->body();
      return nf(*cur);
    }
    case Kind::Dup: return dup_run_nf(t);
    case Kind::Sub: return false;
  }
  return false;
}

}  // namespace

bool is_normal_form(const Term& t) { return nf(t); }

std::string head_tag_name(HeadTag t) {
  switch (t) {
    case HeadTag::Abs: return "Abs";
    case HeadTag::Var: return "Var";
    case HeadTag::Era: return "Era";
    case HeadTag::AbsApp: return "AbsApp";
    case HeadTag::DupApp: return "DupApp";
    case HeadTag::EraApp: return "EraApp";
  }
  return "?";
}

Term HeadForm::reassemble() const {
  Term t = head;
  if (tag == HeadTag::AbsApp || tag == HeadTag::EraApp) t = Term::app(t, first);
  for (auto& a : spine) t = Term::app(t, a);
  return t;
}

HeadForm classify_head_form(const Term& t) {
  switch (t.kind()) {
    case Kind::Abs: return {HeadTag::Abs, t, {}, {}};
    case Kind::Era: return {HeadTag::Era, t, {}, {}};
    case Kind::Var: return {HeadTag::Var, t, {}, {}};
    case Kind::Dup: return {HeadTag::DupApp, t, {}, {}};
    case Kind::Sub: throw TermError("classify_head_form: explicit substitution");
    case Kind::App: break;
  }
  std::vector<Term> args;
  const Term* cur = &t;
  for (; cur->kind() == Kind::App; cur = &cur->fun()) args.push_back(cur->arg());
  std::reverse(args.begin(), args.end());
  switch (cur->kind()) {
    case Kind::Var: return {HeadTag::Var, *cur, {}, args};
    case Kind::Dup: return {HeadTag::DupApp, *cur, {}, args};
    case Kind::Abs:
    case Kind::Era: {
      Term first = args.front();
      args.erase(args.begin());
      return {cur->kind() == Kind::Abs ? HeadTag::AbsApp : HeadTag::EraApp, *cur, first, args};
    }
    default: throw TermError("classify_head_form: explicit substitution");
  }
}

}  // namespace rcl
