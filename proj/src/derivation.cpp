#include "rcl/derivation.hpp"

#include <algorithm>
#include <json.hpp>
#include <set>

#include "rcl/linearity.hpp"
#include "rcl/parse.hpp"

namespace rcl {

using json = nlohmann::ordered_json;

std::string drule_name(DRule r) {
  switch (r) {
    case DRule::Ax: return "Ax";
    case DRule::ArrI: return "ArrI";
    case DRule::ArrE: return "ArrE";
    case DRule::Cont: return "Cont";
    case DRule::Thin: return "Thin";
    case DRule::Subst: return "Subst";
    case DRule::Hole: return "Hole";
  }
  return "?";
}

namespace {

Deriv make(DRule r, Basis g, Term subject, Type t, std::vector<Deriv> ps, std::size_t w = 0) {
  auto n = std::make_shared<DNode>();
  n->rule = r;
  n->basis = std::move(g);
  n->subject = std::move(subject);
  n->type = std::move(t);
  n->premises = std::move(ps);
  n->witness = w;
  return n;
}

Inter lookup(const Basis& g, const Name& x) {
  auto it = g.find(x);
  return it == g.end() ? top() : it->second;
}

Basis arg_meet(const std::vector<Deriv>& args, std::size_t w) {
  std::vector<Basis> bs;
  for (std::size_t i = 0; i < args.size(); ++i) bs.push_back(i == w ? basis_top(args[i]->basis) : args[i]->basis);
  try {
    return basis_meet(bs);
  } catch (const BasisError& e) {
    throw DerivError(e.what());
  }
}

Basis join(Basis a, const Basis& b) {
  for (auto& [x, t] : b) a[x] = t;
  return a;
}

}  // namespace

Deriv d_ax(const Name& x, const Type& t) { return make(DRule::Ax, {{x, single(t)}}, Term::var(x), t, {}); }

Deriv d_arr_i(const Name& x, Deriv body) {
  Basis g = body->basis;
  Inter a = lookup(g, x);
  g.erase(x);
  Term s = Term::abs(x, body->subject);
  Type t = Type::arrow(a, body->type);
  return make(DRule::ArrI, std::move(g), std::move(s), std::move(t), {std::move(body)});
}

Deriv d_arr_e(Deriv fun, std::vector<Deriv> args, std::size_t w) {
  if (args.empty()) throw DerivError("ArrE needs at least one argument premise");
  if (w >= args.size()) throw DerivError("ArrE witness out of range");
  if (fun->type.is_atom()) throw DerivError("ArrE: function type is not an arrow");
  Basis g = join(fun->basis, arg_meet(args, w));
  Term s = Term::app(fun->subject, args[0]->subject);
  Type t = fun->type.cod();
  std::vector<Deriv> ps{std::move(fun)};
  ps.insert(ps.end(), args.begin(), args.end());
  return make(DRule::ArrE, std::move(g), std::move(s), std::move(t), std::move(ps), w);
}

Deriv d_cont(const Name& z, const Name& x, const Name& y, Deriv body) {
  Basis g = body->basis;
  Inter a = meet(lookup(g, x), lookup(g, y));
  g.erase(x);
  g.erase(y);
  g[z] = a;
  Term s = Term::dup(z, x, y, body->subject);
  Type t = body->type;
  return make(DRule::Cont, std::move(g), std::move(s), std::move(t), {std::move(body)});
}

Deriv d_thin(const Name& x, Deriv body) {
  Basis g = body->basis;
  g[x] = top();
  Term s = Term::era(x, body->subject);
  Type t = body->type;
  return make(DRule::Thin, std::move(g), std::move(s), std::move(t), {std::move(body)});
}

Deriv d_subst(const Name& x, Deriv body, std::vector<Deriv> args, std::size_t w) {
  if (args.empty()) throw DerivError("Subst needs at least one argument premise");
  if (w >= args.size()) throw DerivError("Subst witness out of range");
  Basis g = body->basis;
  g.erase(x);
  g = join(std::move(g), arg_meet(args, w));
  Term s = Term::sub(body->subject, args[0]->subject, x);
  Type t = body->type;
  std::vector<Deriv> ps{std::move(body)};
  ps.insert(ps.end(), args.begin(), args.end());
  return make(DRule::Subst, std::move(g), std::move(s), std::move(t), std::move(ps), w);
}

Deriv d_hole(const Term& subject) {
  Basis g;
  for (auto& x : raw_free_vars(subject)) g[x] = top();
  return make(DRule::Hole, std::move(g), subject, Type::atom("?"), {});
}

std::vector<Deriv> counted_args(const DNode& d) {
  std::vector<Deriv> r;
  for (std::size_t i = 0; i < d.arg_count(); ++i)
    if (i != d.witness) r.push_back(d.arg(i));
  return r;
}

namespace {

struct Checker {
  TypeEq mode;
  std::vector<DerivIssue> issues;
  std::vector<std::size_t> path;

  void fail(const std::string& m) { issues.push_back({path, m}); }

  bool premises(const DNode& d, std::size_t n) {
    if (d.premises.size() != n) {
      fail(drule_name(d.rule) + " expects " + std::to_string(n) + " premise(s), has " +
           std::to_string(d.premises.size()));
      return false;
    }
    return true;
  }

  bool subject(const DNode& d, Kind k) {
    if (d.subject.empty() || d.subject.kind() != k) {
      fail(drule_name(d.rule) + ": subject has the wrong shape");
      return false;
    }
    return true;
  }

  void same_subject(const Deriv& p, const Term& t, const char* what) {
    if (!(p->subject == t)) fail(std::string("premise subject does not match the ") + what);
  }

  void expect_basis(const DNode& d, const Basis& g) {
    if (!basis_eq(d.basis, g, mode)) fail("basis is " + to_string(d.basis) + ", rule gives " + to_string(g));
  }

  void expect_type(const DNode& d, const Type& t) {
    if (!type_eq(d.type, t, mode)) fail("type is " + to_string(d.type) + ", rule gives " + to_string(t));
  }

  // Shared part of ArrE and Subst. Returns the met argument basis.
  std::optional<Basis> args(const DNode& d, const Term& arg_subject) {
    if (d.premises.size() < 2) {
      fail(drule_name(d.rule) + " needs the main premise and at least one argument premise");
      return std::nullopt;
    }
    if (d.witness >= d.arg_count()) {
      fail("witness index out of range");
      return std::nullopt;
    }
    for (std::size_t i = 0; i < d.arg_count(); ++i) same_subject(d.arg(i), arg_subject, "argument");
    std::vector<Basis> bs;
    for (std::size_t i = 0; i < d.arg_count(); ++i)
      bs.push_back(i == d.witness ? basis_top(d.arg(i)->basis) : d.arg(i)->basis);
    try {
      return basis_meet(bs);
    } catch (const BasisError&) {
      fail("argument premises have different domains");
      return std::nullopt;
    }
  }

  Inter counted_types(const DNode& d) {
    std::vector<Type> ts;
    for (std::size_t i = 0; i < d.arg_count(); ++i)
      if (i != d.witness) ts.push_back(d.arg(i)->type);
    return inter(ts);
  }

  void disjoint_join(const Basis& a, const Basis& b, Basis& out) {
    out = a;
    for (auto& [x, t] : b) {
      if (out.count(x)) fail("bases of the premises overlap at " + x);
      out[x] = t;
    }
  }

  void node(const Deriv& dp) {
    const DNode& d = *dp;
    if (d.subject.empty()) {
      fail("missing subject");
      return;
    }
    if (d.type.empty()) {
      fail("missing type");
      return;
    }
    {
      auto fv = raw_free_vars(d.subject);
      std::set<Name> f(fv.begin(), fv.end()), dom;
      for (auto& [x, t] : d.basis) dom.insert(x);
      if (f != dom) fail("basis domain differs from the free variables of " + to_string(d.subject));
    }
    if (d.subject.kind() == Kind::Sub && d.rule != DRule::Subst)
      fail("explicit substitution typed by " + drule_name(d.rule));
    switch (d.rule) {
      case DRule::Hole: fail("unfilled hole for " + to_string(d.subject)); break;
      case DRule::Ax: {
        if (!premises(d, 0) || !subject(d, Kind::Var)) break;
        Basis g{{d.subject.name(), single(d.type)}};
        if (!basis_eq(d.basis, g, mode))
          fail("Ax: the variable must carry exactly the strict type " + to_string(d.type) + ", basis is " +
               to_string(d.basis));
        break;
      }
      case DRule::ArrI: {
        if (!premises(d, 1) || !subject(d, Kind::Abs)) break;
        const Deriv& p = d.premises[0];
        same_subject(p, d.subject.body(), "abstraction body");
        const Name& x = d.subject.name();
        auto it = p->basis.find(x);
        if (it == p->basis.end()) {
          fail("ArrI: bound variable " + x + " missing from the premise basis");
          break;
        }
        Basis g = p->basis;
        g.erase(x);
        expect_basis(d, g);
        expect_type(d, Type::arrow(it->second, p->type));
        break;
      }
      case DRule::ArrE: {
        if (!subject(d, Kind::App)) break;
        auto m = args(d, d.subject.arg());
        if (!m) break;
        const Deriv& f = d.main();
        same_subject(f, d.subject.fun(), "function");
        if (f->type.is_atom()) {
          fail("ArrE: function type " + to_string(f->type) + " is not an arrow");
          break;
        }
        if (!type_eq(f->type.dom(), counted_types(d), mode))
          fail("ArrE: domain " + to_string(f->type.dom()) + " does not match argument types " +
               to_string(counted_types(d)));
        Basis g;
        disjoint_join(f->basis, *m, g);
        expect_basis(d, g);
        expect_type(d, f->type.cod());
        break;
      }
      case DRule::Cont: {
        if (!premises(d, 1) || !subject(d, Kind::Dup)) break;
        const Deriv& p = d.premises[0];
        same_subject(p, d.subject.body(), "duplication body");
        const Name &z = d.subject.name(), &x = d.subject.left(), &y = d.subject.right();
        if (!p->basis.count(x) || !p->basis.count(y)) {
          fail("Cont: copies must both be in the premise basis");
          break;
        }
        if (p->basis.count(z)) fail("Cont: " + z + " already in the premise basis");
        Basis g = p->basis;
        g.erase(x);
        g.erase(y);
        g[z] = meet(p->basis.at(x), p->basis.at(y));
        expect_basis(d, g);
        expect_type(d, p->type);
        break;
      }
      case DRule::Thin: {
        if (!premises(d, 1) || !subject(d, Kind::Era)) break;
        const Deriv& p = d.premises[0];
        same_subject(p, d.subject.body(), "erasure body");
        const Name& x = d.subject.name();
        if (p->basis.count(x)) fail("Thin: " + x + " already in the premise basis");
        Basis g = p->basis;
        g[x] = top();
        expect_basis(d, g);
        expect_type(d, p->type);
        break;
      }
      case DRule::Subst: {
        if (!subject(d, Kind::Sub)) break;
        auto m = args(d, d.subject.replacement());
        if (!m) break;
        const Deriv& b = d.main();
        same_subject(b, d.subject.body(), "substitution body");
        const Name& x = d.subject.name();
        auto it = b->basis.find(x);
        if (it == b->basis.end()) {
          fail("Subst: " + x + " missing from the main premise basis");
          break;
        }
        if (!type_eq(it->second, counted_types(d), mode))
          fail("Subst: " + x + ":" + to_string(it->second) + " does not match argument types " +
               to_string(counted_types(d)));
        Basis rest = b->basis;
        rest.erase(x);
        Basis g;
        disjoint_join(rest, *m, g);
        expect_basis(d, g);
        expect_type(d, b->type);
        break;
      }
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      path.push_back(i);
      if (!d.premises[i]) fail("missing premise");
      else node(d.premises[i]);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<DerivIssue> check_derivation(const Deriv& d, TypeEq mode) {
  Checker c{mode, {}, {}};
  if (!d) return {{{}, "empty derivation"}};
  if (!d->subject.empty() && !check_sterm(d->subject).ok) c.fail("subject is not a well-formed term");
  c.node(d);
  return c.issues;
}

bool valid(const Deriv& d, TypeEq mode) { return check_derivation(d, mode).empty(); }

std::string issue_to_string(const DerivIssue& e) {
  std::string p = "root";
  for (auto i : e.path) p += "." + std::to_string(i);
  return p + ": " + e.message;
}

std::size_t deriv_size(const Deriv& d) {
  std::size_t n = 1;
  for (auto& p : d->premises) n += deriv_size(p);
  return n;
}

bool has_hole(const Deriv& d) {
  if (d->rule == DRule::Hole) return true;
  return std::any_of(d->premises.begin(), d->premises.end(), [](const Deriv& p) { return has_hole(p); });
}

bool same_judgment(const Deriv& a, const Deriv& b, TypeEq mode) {
  return basis_eq(a->basis, b->basis, mode) && type_eq(a->type, b->type, mode) && a->subject == b->subject;
}

Deriv rename_deriv(const Deriv& d, const std::vector<std::pair<Name, Name>>& map) {
  if (map.empty()) return d;
  auto n = std::make_shared<DNode>(*d);
  n->subject = rename_all(d->subject, map);
  Basis g;
  for (auto& [x, t] : d->basis) {
    Name y = x;
    for (auto& [from, to] : map)
      if (from == x) y = to;
    g[y] = t;
  }
  n->basis = std::move(g);
  for (auto& p : n->premises) p = rename_deriv(p, map);
  return n;
}

std::string judgment_string(const Deriv& d) {
  return to_string(d->basis) + " |- " + to_string(d->subject) + " : " + to_string(d->type);
}

namespace {

void text(const Deriv& d, int depth, std::string& out) {
  out += std::string(std::size_t(depth) * 2, ' ') + "(" + drule_name(d->rule) + ") " + judgment_string(d);
  if ((d->rule == DRule::ArrE || d->rule == DRule::Subst) && d->arg_count() > 0)
    out += "   [witness " + std::to_string(d->witness) + "]";
  out += '\n';
  for (auto& p : d->premises) text(p, depth + 1, out);
}

json type_json(const Type& t) {
  if (t.is_atom()) return t.name();
  json dom = json::array();
  for (auto& s : t.dom()) dom.push_back(type_json(s));
  return json{{"dom", dom}, {"cod", type_json(t.cod())}};
}

json inter_json(const Inter& a) {
  json j = json::array();
  for (auto& s : a) j.push_back(type_json(s));
  return j;
}

json node_json(const Deriv& d) {
  json j;
  j["rule"] = drule_name(d->rule);
  json ctx = json::array();
  for (auto& [x, t] : d->basis) ctx.push_back(json{{"var", x}, {"type", inter_json(t)}});
  j["ctx"] = ctx;
  j["term"] = to_string(d->subject);
  j["type"] = type_json(d->type);
  if (d->rule == DRule::ArrE || d->rule == DRule::Subst) j["witness_index"] = d->witness;
  json ps = json::array();
  for (auto& p : d->premises) ps.push_back(node_json(p));
  j["premises"] = ps;
  return j;
}

Type type_from(const json& j) {
  if (j.is_string()) return Type::atom(j.get<std::string>());
  if (!j.is_object() || !j.contains("dom") || !j.contains("cod"))
    throw DerivError("type must be an atom string or {dom, cod}");
  std::vector<Type> dom;
  for (auto& s : j.at("dom")) dom.push_back(type_from(s));
  return Type::arrow(inter(dom), type_from(j.at("cod")));
}

Inter inter_from(const json& j) {
  if (j.is_array()) {
    std::vector<Type> ts;
    for (auto& s : j) ts.push_back(type_from(s));
    return inter(ts);
  }
  return single(type_from(j));
}

Deriv node_from(const json& j) {
  if (!j.is_object()) throw DerivError("derivation node must be an object");
  auto n = std::make_shared<DNode>();
  std::string r = j.at("rule").get<std::string>();
  bool found = false;
  for (DRule x : {DRule::Ax, DRule::ArrI, DRule::ArrE, DRule::Cont, DRule::Thin, DRule::Subst, DRule::Hole})
    if (drule_name(x) == r) {
      n->rule = x;
      found = true;
    }
  if (!found) throw DerivError("unknown rule " + r);
  for (auto& e : j.at("ctx")) {
    Name x = e.at("var").get<std::string>();
    if (n->basis.count(x)) throw DerivError("variable " + x + " listed twice in ctx");
    n->basis[x] = inter_from(e.at("type"));
  }
  try {
    n->subject = parse_sterm(j.at("term").get<std::string>());
  } catch (const std::exception& e) {
    throw DerivError(std::string("bad term: ") + e.what());
  }
  n->type = type_from(j.at("type"));
  if (j.contains("witness_index")) n->witness = j.at("witness_index").get<std::size_t>();
  if (j.contains("premises"))
    for (auto& p : j.at("premises")) n->premises.push_back(node_from(p));
  return n;
}

}  // namespace

std::string deriv_to_text(const Deriv& d) {
  std::string s;
  text(d, 0, s);
  return s;
}

std::string deriv_to_json(const Deriv& d, int indent) { return node_json(d).dump(indent); }

Deriv deriv_from_json(const std::string& text) {
  try {
    return node_from(json::parse(text));
  } catch (const json::exception& e) {
    throw DerivError(std::string("bad derivation file: ") + e.what());
  }
}

}  // namespace rcl
