#include <doctest.h>

#include <algorithm>
#include <set>

#include "rcl/equiv.hpp"
#include "rcl/graph.hpp"
#include "rcl/linearity.hpp"
#include "rcl/normal_form.hpp"
#include "rcl/parse.hpp"
#include "rcl/plain.hpp"
#include "rcl/reduce.hpp"
#include "support/enumerate.hpp"

using namespace rcl;

namespace {

std::set<Name> fv_set(const Term& t) {
  auto v = raw_free_vars(t);
  return {v.begin(), v.end()};
}

std::set<std::pair<RuleId, std::string>> after_set(const Term& t) {
  std::set<std::pair<RuleId, std::string>> s;
  for (auto& st : enumerate_redexes(t)) s.insert({st.rule, canonical_key(st.after)});
  return s;
}

const Term kOmega = to_resource(parse_plain("(\\x. x x)(\\x. x x)"));
const char* kEx4 = "dup u as (u1,u2). dup v as (v1,v2). (del u1. v1)(del u2. v2)";

}  // namespace

TEST_CASE("single rule examples") {
  auto s = enumerate_redexes(parse_term("(\\x. del x. y) z"));
  REQUIRE(s.size() == 1);
  CHECK(s[0].rule == RuleId::Beta);
  CHECK(to_string(s[0].after) == "del z. y");
  CHECK(s[0].beta_trace.has_value());

  CHECK(enumerate_redexes(parse_term("\\x. x")).empty());

  auto g = enumerate_redexes(parse_term("dup x as (a,b). del a. b"));
  REQUIRE(g.size() == 1);
  CHECK(g[0].rule == RuleId::GammaOmega2);
  CHECK(to_string(g[0].after) == "x");

  auto w = enumerate_redexes(parse_term("(del x. m) n"));
  REQUIRE(w.size() == 1);
  CHECK(w[0].rule == RuleId::Omega2);
  CHECK(to_string(w[0].after) == "del x. m n");

  auto b = enumerate_redexes(parse_term("(\\x. x) y"));
  REQUIRE(b.size() == 1);
  CHECK(to_string(b[0].after) == "y");

  CHECK(rule_applies(parse_term("dup x as (a,b). a b"), RuleId::Gamma2) == false);
  CHECK(rule_applies(parse_term("dup x as (a,b). a b c"), RuleId::Gamma2));
  CHECK(rule_applies(parse_term("dup x as (a,b). c (a b)"), RuleId::Gamma3));
  CHECK(rule_applies(parse_term("\\x. del y. x"), RuleId::Omega1));
  CHECK_FALSE(rule_applies(parse_term("\\x. del x. y"), RuleId::Omega1));
  CHECK(rule_applies(parse_term("dup x as (a,b). del y. a b"), RuleId::GammaOmega1));
}

TEST_CASE("rule names round trip") {
  for (RuleId r : kAllRules) CHECK(rule_from_name(rule_name(r)) == r);
  CHECK_FALSE(rule_from_name("delta").has_value());
}

TEST_CASE("reduce_step replays and rejects stale steps") {
  Term t = parse_term("(\\x. del x. y) z");
  auto s = enumerate_redexes(t);
  REQUIRE(s.size() == 1);
  CHECK(alpha_eq(reduce_step(t, s[0]), s[0].after));
  CHECK_THROWS_AS(reduce_step(parse_term("(\\x. x) y"), s[0]), ReduceError);
  CHECK_THROWS_AS(contract(parse_term("x y"), {}, RuleId::Beta), ReduceError);

  // steps found through an equivalence adjustment also replay
  testing::for_each_term(6, false, [](const Term& m) {
    for (auto& st : enumerate_redexes(m)) REQUIRE(canonical_key(reduce_step(m, st)) == canonical_key(st.after));
  });
}

TEST_CASE("normal forms are exactly the irreducible terms") {
  std::size_t nfs = 0, total = 0;
  testing::for_each_term(7, false, [&](const Term& t) {
    ++total;
    bool nf = is_normal_form(t);
    nfs += nf;
    INFO(to_string(t));
    REQUIRE(nf == enumerate_redexes(t).empty());
    REQUIRE(reducible(t) == !nf);
  });
  CHECK(nfs > 0);
  CHECK(nfs < total);
}

TEST_CASE("steps keep terms linear with the same free variables") {
  testing::for_each_term(7, false, [](const Term& t) {
    auto f = fv_set(t);
    for (auto& s : enumerate_redexes(t)) {
      INFO(to_string(t) << " --" << rule_name(s.rule) << "--> " << to_string(s.after));
      REQUIRE(check_linear(s.after).ok);
      REQUIRE(barendregt(s.after));
      REQUIRE(fv_set(s.after) == f);
    }
  });
}

TEST_CASE("redex sets are stable under equivalence") {
  testing::for_each_term(6, false, [](const Term& t) {
    auto base = after_set(t);
    for (auto& u : equiv_class(t)) REQUIRE(after_set(u) == base);
  });
}

TEST_CASE("normalisation") {
  auto r = normalize(parse_term("(\\x. del x. y) z"), Strategy::LeftmostOutermost, 10);
  CHECK(r.normal);
  CHECK(r.trace.size() == 1);
  CHECK(to_string(r.term) == "del z. y");

  auto id = normalize(parse_term("\\x. x"), Strategy::ExhaustiveFirst, 10);
  CHECK(id.normal);
  CHECK(id.trace.empty());

  auto om = normalize(kOmega, Strategy::LeftmostOutermost, 20);
  CHECK_FALSE(om.normal);
  CHECK(om.trace.size() == 20);
  CHECK_FALSE(normalize(kOmega, Strategy::ExhaustiveFirst, 20).normal);

  CHECK(strategy_from_name("lo") == Strategy::LeftmostOutermost);
  CHECK(strategy_from_name("ef") == Strategy::ExhaustiveFirst);
  CHECK_FALSE(strategy_from_name("random").has_value());
}

TEST_CASE("fourth worked example continues to the expected term") {
  Term t = parse_term(kEx4);
  auto g = explore(t);
  REQUIRE(g.complete);
  REQUIRE(g.acyclic());
  std::string target = canonical_key(parse_term("dup v as (v1,v2). v1 (del u. v2)"));
  bool found = std::any_of(g.nodes.begin(), g.nodes.end(), [&](const GraphNode& n) { return n.key == target; });
  CHECK(found);
  for (auto strat : {Strategy::LeftmostOutermost, Strategy::ExhaustiveFirst}) {
    auto r = normalize(t, strat, 100);
    REQUIRE(r.normal);
    CHECK(equiv(r.term, parse_term("del u. dup v as (v1,v2). v1 v2")));
  }
  CHECK(longest_path(g) >= 2);
}

TEST_CASE("strong normalisation classification") {
  auto ex1 = classify_sn(parse_term("(\\x. del x. y) z"));
  CHECK(ex1.verdict == SnVerdict::SN);
  CHECK(longest_path(ex1.graph) == 1);

  auto nf = classify_sn(parse_term("\\x. x"));
  CHECK(nf.verdict == SnVerdict::SN);
  CHECK(nf.graph.nodes.size() == 1);
  CHECK(longest_path(nf.graph) == 0);

  auto om = classify_sn(kOmega, Budget{10000, 50000});
  REQUIRE(om.verdict == SnVerdict::NonSN);
  REQUIRE(om.witness.size() >= 2);
  CHECK(std::count(om.witness.begin(), om.witness.end(), om.witness.back()) == 2);
  CHECK_THROWS_AS(longest_path(om.graph), ReduceError);

  auto tiny = classify_sn(parse_term(kEx4), Budget{2, 100});
  CHECK(tiny.verdict == SnVerdict::Unknown);
}

TEST_CASE("graph invariants on small terms") {
  testing::for_each_term(6, false, [](const Term& t) {
    auto g = explore(t, Budget{2000, 10000});
    if (!g.complete) return;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) REQUIRE(g.nodes[i].normal == g.out[i].empty());
    for (auto& e : g.edges) {
      REQUIRE(check_linear(g.nodes[e.to].term).ok);
      REQUIRE(fv_set(g.nodes[e.from].term) == fv_set(g.nodes[e.to].term));
    }
    if (g.acyclic()) {
      auto len = longest_path(g);
      for (auto s : {Strategy::LeftmostOutermost, Strategy::ExhaustiveFirst}) {
        auto r = normalize(t, s, len);
        REQUIRE(r.normal);
      }
    }
  });
}

TEST_CASE("graph export") {
  auto g = explore(parse_term("(\\x. del x. y) z"));
  std::string j = graph_to_json(g);
  CHECK(j.find("\"rule\": \"beta\"") != std::string::npos);
  CHECK(j.find("\"longest_path\": 1") != std::string::npos);
}
