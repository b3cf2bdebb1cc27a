#include <doctest.h>

#include <map>
#include <set>

#include "rcl/equiv.hpp"
#include "rcl/linearity.hpp"
#include "rcl/normal_form.hpp"
#include "rcl/parse.hpp"
#include "rcl/plain.hpp"
#include "support/enumerate.hpp"

using namespace rcl;

namespace {

// Nameless rendering: bound occurrences become distances to their binder.
std::string debruijn(const Term& t, std::vector<Name>& scope) {
  auto ref = [&](const Name& x) -> std::string {
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i] == x) return "#" + std::to_string(scope.size() - 1 - i);
    return x;
  };
  switch (t.kind()) {
    case Kind::Var: return ref(t.name());
    case Kind::Abs: {
      scope.push_back(t.name());
      auto s = "L(" + debruijn(t.body(), scope) + ")";
      scope.pop_back();
      return s;
    }
    case Kind::App: return "A(" + debruijn(t.fun(), scope) + "," + debruijn(t.arg(), scope) + ")";
    case Kind::Era: return "E" + ref(t.name()) + "(" + debruijn(t.body(), scope) + ")";
    case Kind::Dup: {
      auto src = ref(t.name());
      scope.push_back(t.left());
      scope.push_back(t.right());
      auto s = "D" + src + "(" + debruijn(t.body(), scope) + ")";
      scope.pop_back();
      scope.pop_back();
      return s;
    }
    case Kind::Sub: {
      auto n = debruijn(t.replacement(), scope);
      scope.push_back(t.name());
      auto s = "S(" + debruijn(t.body(), scope) + "," + n + ")";
      scope.pop_back();
      return s;
    }
  }
  return "";
}

std::string debruijn(const Term& t) {
  std::vector<Name> s;
  return debruijn(t, s);
}

std::size_t count_terms(int max_size, bool subs) {
  std::size_t n = 0;
  testing::for_each_term(max_size, subs, [&](const Term&) { ++n; });
  return n;
}

}  // namespace

TEST_CASE("parser builds the expected trees") {
  Term t = parse_term("\\x. del x. y");
  CHECK(t == Term::abs("x", Term::era("x", Term::var("y"))));
  CHECK(parse_term("x") == Term::var("x"));
  CHECK(parse_term("dup x as (x1,x2). x1 x2") ==
        Term::dup("x", "x1", "x2", Term::app(Term::var("x1"), Term::var("x2"))));
  CHECK(parse_term("a b c") == Term::app(Term::app(Term::var("a"), Term::var("b")), Term::var("c")));
  CHECK(parse_term("a \\x. x b") ==
        Term::app(Term::var("a"), Term::abs("x", Term::app(Term::var("x"), Term::var("b")))));
  CHECK(parse_term("\\x y. x y") == parse_term("\\x. \\y. x y"));
  CHECK(parse_sterm("(x y)[z/x]") ==
        Term::sub(Term::app(Term::var("x"), Term::var("y")), Term::var("z"), "x"));
}

TEST_CASE("parser reports errors with positions") {
  CHECK_THROWS_AS(parse_term("\\x. "), ParseError);
  CHECK_THROWS_AS(parse_term("(x"), ParseError);
  CHECK_THROWS_AS(parse_term("x[y/x]"), ParseError);
  try {
    parse_term("\\x. \\x. x");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 6);
  }
  try {
    parse_term("x\n  )");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_term("x (\\x. x)"), ParseError);
  CHECK_THROWS_AS(parse_term("dup x as (a,a). a"), ParseError);
}

TEST_CASE("printing round-trips through the parser") {
  for (const char* s : {"\\x. del x. y", "dup u as (u1,u2). dup v as (v1,v2). (del u1. v1)(del u2. v2)",
                        "dup v as (v1,v2). v1 (del u. v2)", "(\\x. x) y", "x (y z) w", "f (\\x. x)"}) {
    CHECK(to_string(parse_term(s)) == s);
  }
  CHECK(to_string(parse_sterm("(dup x as (y,z). y z)[del u. v/x]")) == "(dup x as (y,z). y z)[del u. v/x]");
  testing::for_each_term(6, true, [](const Term& t) {
    Term back = parse_sterm(to_string(t));
    REQUIRE(back == t);
  });
}

TEST_CASE("linearity checker") {
  auto r = check_linear(parse_term("\\x. y"));
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations[0].rule == "abs");
  CHECK(r.violations[0].variable == "x");
  r = check_linear(parse_term("\\x. x x"));
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations[0].rule == "app");
  CHECK(r.violations[0].variable == "x");
  CHECK(check_linear(parse_term("\\x. dup x as (x1,x2). x1 x2")).ok);
  CHECK_FALSE(check_linear(parse_term("del x. x")).ok);
  CHECK_FALSE(check_linear(parse_term("dup x as (a,b). a")).ok);
  CHECK_FALSE(check_linear(parse_term("dup x as (a,b). a b x")).ok);
  CHECK_FALSE(check_linear(parse_sterm("x[y/x]")).ok);
  CHECK(check_sterm(parse_sterm("x[y/x]")).ok);
  CHECK_FALSE(check_sterm(parse_sterm("(x y)[y/x]")).ok);
}

TEST_CASE("free variable lists") {
  using V = std::vector<Name>;
  CHECK(free_var_list(parse_term("del x. y")) == V{"x", "y"});
  CHECK(free_var_list(parse_term("x")) == V{"x"});
  CHECK(free_var_list(parse_term("(del x. y) z")) == V{"x", "y", "z"});
  CHECK(free_var_list(parse_term("dup x as (a,b). b a")) == V{"x"});
  CHECK(free_var_list(parse_term("dup x as (a,b). c b a")) == V{"x", "c"});
  CHECK_THROWS_AS(free_var_list(parse_term("\\x. y")), IllFormed);
  testing::for_each_term(7, false, [](const Term& t) {
    auto fv = free_var_list(t);
    std::set<Name> s(fv.begin(), fv.end());
    REQUIRE(s.size() == fv.size());
  });
}

TEST_CASE("enumerator matches independent counts") {
  // Counts from a separate recurrence over labelled free variables.
  CHECK(count_terms(6, false) == 1079);
  CHECK(count_terms(7, false) == 7050);
  CHECK(count_terms(6, true) == 1455);
  std::size_t plain = 0;
  for (int n = 1; n <= 6; ++n) testing::gen_plain(n, 0, [&](const Term&) { ++plain; });
  CHECK(plain == 3 + 4 + 14 + 46 + 172 + 693);
}

TEST_CASE("enumerated terms are linear, distinct up to alpha, and obey the convention") {
  std::set<std::string> seen;
  testing::for_each_term(7, true, [&](const Term& t) {
    REQUIRE(check_sterm(t).ok);
    REQUIRE(barendregt(t));
    REQUIRE(seen.insert(debruijn(t)).second);
  });
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_term("\\x. x"), parse_term("\\y. y")));
  CHECK_FALSE(alpha_eq(parse_term("\\x. x"), parse_term("\\x. del y. x")));
  CHECK(alpha_eq(parse_term("dup x as (a,b). a b"), parse_term("dup x as (u,v). u v")));
  CHECK_FALSE(alpha_eq(parse_term("dup x as (a,b). a b"), parse_term("dup x as (u,v). v u")));
  CHECK_FALSE(alpha_eq(parse_term("\\x. x"), parse_term("\\y. x")));
  CHECK(alpha_eq(parse_sterm("(\\y. x y)[z/x]"), parse_sterm("(\\w. u w)[z/u]")));

  std::vector<Term> terms;
  testing::for_each_term(5, true, [&](const Term& t) { terms.push_back(t); });
  // rename every binder with a prefix
  for (auto& t : terms) {
    std::vector<std::pair<Name, Name>> m;
    for (auto& b : binders(t)) m.push_back({b, "q" + b});
    Term u = rename_all(t, m);
    REQUIRE(alpha_eq(t, u));
    REQUIRE(alpha_key(t) == alpha_key(u));
  }
  for (std::size_t i = 0; i < terms.size(); i += 7)
    for (std::size_t j = 0; j < terms.size(); j += 5)
      REQUIRE(alpha_eq(terms[i], terms[j]) == (debruijn(terms[i]) == debruijn(terms[j])));
}

TEST_CASE("freshen restores the binder convention") {
  Term t = Term::app(Term::abs("x", Term::var("x")), Term::abs("x", Term::var("x")));
  Term f = freshen(t);
  CHECK(barendregt(f));
  CHECK(alpha_eq(f, t));
  Term s = Term::abs("y", Term::app(Term::var("y"), Term::abs("y", Term::var("y"))));
  CHECK(alpha_eq(freshen(s), s));
  CHECK(barendregt(freshen(s)));
  Term bad = Term::app(Term::var("x"), Term::abs("x", Term::var("x")));
  CHECK(barendregt(freshen(bad)));
  CHECK(alpha_eq(freshen(bad), bad));
}

TEST_CASE("structural equivalence classes") {
  auto cls = equiv_class(parse_term("del x. del y. z"));
  CHECK(cls.size() == 2);
  CHECK(equiv_class(parse_term("x")).size() == 1);
  auto d = equiv_class(parse_term("dup x as (a,b). a b"));
  bool found = false;
  for (auto& m : d) found |= alpha_eq(m, parse_term("dup x as (b,a). b a"));
  CHECK(found);
  CHECK(alpha_eq(equiv_canonical(parse_term("del y. del x. z")), equiv_canonical(parse_term("del x. del y. z"))));
  CHECK(to_string(equiv_canonical(parse_term("del y. del x. z"))) == "del x. del y. z");
  CHECK_THROWS_AS(equiv_class(parse_term("del a. del b. del c. del d. del e. del f. del g. x"), 100), EquivError);
}

TEST_CASE("moves are involutions") {
  testing::for_each_term(7, false, [](const Term& t) {
    for (auto& m : moves(t)) {
      Term u = *apply_move(t, m);
      auto back = apply_move(u, m);
      REQUIRE(back);
      REQUIRE(*back == t);
    }
  });
}

TEST_CASE("canonical representative is a class invariant") {
  std::size_t checked = 0;
  testing::for_each_term(8, false, [&](const Term& t) {
    if (t.size() == 8 && (checked++ % 3)) return;
    auto cls = equiv_class(t);
    std::string key = canonical_key(t);
    Term c = equiv_canonical(t);
    REQUIRE(check_linear(c).ok);
    REQUIRE(barendregt(c));
    bool member = false;
    for (auto& m : cls) {
      REQUIRE(check_linear(m).ok);
      REQUIRE(raw_free_vars(m).size() == raw_free_vars(t).size());
      REQUIRE(is_normal_form(m) == is_normal_form(t));
      INFO(to_string(t) << "  vs  " << to_string(m));
      REQUIRE(canonical_key(m) == key);
      member |= alpha_eq(m, c);
    }
    REQUIRE(member);
    REQUIRE(canonical_key(c) == key);
  });
}

TEST_CASE("canonical keys separate distinct classes") {
  // Two terms share a key only if one lies in the other's class.
  std::map<std::string, Term> rep;
  testing::for_each_term(7, false, [&](const Term& t) {
    auto key = canonical_key(t);
    auto it = rep.find(key);
    if (it == rep.end()) {
      rep.emplace(key, t);
      return;
    }
    bool found = false;
    for (auto& m : equiv_class(it->second)) found |= alpha_eq(m, t);
    INFO(to_string(t) << " vs " << to_string(it->second));
    REQUIRE(found);
  });
}

TEST_CASE("equivalence paths reach the target") {
  Term a = parse_term("dup x as (y,z). dup y as (u,v). (u v) z");
  Term b = parse_term("dup x as (p,q). dup q as (r,s). (r s) p");
  auto p = equiv_path(a, b);
  REQUIRE(p);
  CHECK(alpha_eq(apply_moves(a, *p), b));
  CHECK_FALSE(equiv_path(a, parse_term("dup x as (y,z). y z")));
}

TEST_CASE("head forms") {
  auto h = classify_head_form(parse_term("(\\x. x) y"));
  CHECK(h.tag == HeadTag::AbsApp);
  CHECK(h.spine.empty());
  CHECK(h.first == Term::var("y"));
  h = classify_head_form(parse_term("x y z"));
  CHECK(h.tag == HeadTag::Var);
  CHECK(h.spine.size() == 2);
  h = classify_head_form(parse_term("(dup x as (a,b). a b) y"));
  CHECK(h.tag == HeadTag::DupApp);
  CHECK(h.spine.size() == 1);
  CHECK(classify_head_form(parse_term("del x. y")).tag == HeadTag::Era);
  CHECK(classify_head_form(parse_term("(del x. y) z w")).tag == HeadTag::EraApp);
  CHECK(classify_head_form(parse_term("\\x. x")).tag == HeadTag::Abs);
  testing::for_each_term(7, false, [](const Term& t) {
    auto hf = classify_head_form(t);
    REQUIRE(hf.reassemble() == t);
  });
}

TEST_CASE("normal form recognition") {
  CHECK(is_normal_form(parse_term("\\x. del x. y")));
  CHECK_FALSE(is_normal_form(parse_term("(\\x. x) y")));
  CHECK(is_normal_form(parse_term("dup x as (a,b). (a)(b)")));
  CHECK_FALSE(is_normal_form(parse_term("dup x as (a,b). \\y. a b y")));
  CHECK_FALSE(is_normal_form(parse_term("\\x. del y. x")));
  CHECK_FALSE(is_normal_form(parse_term("x (del y. z)")));
  CHECK(is_normal_form(parse_term("(dup x as (a,b). a b) y")));
  CHECK(is_normal_form(parse_term("dup x as (a,b). dup y as (c,d). (a c)(b d)")));
  CHECK_FALSE(is_normal_form(parse_term("dup x as (a,b). dup a as (c,d). (c d) b")));
  CHECK_FALSE(is_normal_form(parse_term("dup x as (a,b). del y. a b")));
  CHECK(is_normal_form(parse_term("del y. dup x as (a,b). a b")));
}

TEST_CASE("embedding into resource terms") {
  CHECK(to_string(to_resource(parse_plain("\\x. y"))) == "\\x. del x. y");
  CHECK(to_string(to_resource(parse_plain("\\x. x x"))) == "\\x. dup x as (x1,x2). x1 x2");
  CHECK(to_string(to_resource(parse_plain("\\x. x"))) == "\\x. x");
  CHECK(to_string(to_plain(parse_term("\\x. del x. y"))) == "\\x. y");
  CHECK(to_string(to_plain(parse_term("\\x. dup x as (a,b). a b"))) == "\\x. x x");
  CHECK(to_string(to_plain(parse_term("x"))) == "x");
  CHECK(check_linear(to_resource(parse_plain("\\x. x x x"))).ok);
  CHECK(check_linear(to_resource(parse_plain("(\\x. x x)(\\x. x x)"))).ok);
  CHECK_THROWS(parse_plain("del x. x"));
}

TEST_CASE("shared-variable order does not matter up to equivalence") {
  for (int n = 1; n <= 8; ++n) {
    testing::gen_plain(n, 0, [](const Term& p) {
      Term a = to_resource(p, SharedOrder::FvList);
      Term b = to_resource(p, SharedOrder::Reversed);
      REQUIRE(check_linear(a).ok);
      REQUIRE(check_linear(b).ok);
      REQUIRE(canonical_key(a) == canonical_key(b));
    });
  }
}

TEST_CASE("plain round trip on small terms") {
  for (int n = 1; n <= 8; ++n) {
    testing::gen_plain(n, 0, [](const Term& p) {
      Term m = to_resource(p);
      REQUIRE(check_linear(m).ok);
      REQUIRE(alpha_eq(to_plain(m), p));
    });
  }
}
