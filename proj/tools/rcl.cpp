#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "rcl/equiv.hpp"
#include "rcl/graph.hpp"
#include "rcl/linearity.hpp"
#include "rcl/normal_form.hpp"
#include "rcl/parse.hpp"
#include "rcl/plain.hpp"
#include "rcl/reduce.hpp"
#include "rcl/subst.hpp"
#include "rcl/typing.hpp"

using namespace rcl;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline text, or the contents of a file when written @path.
std::string input(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

std::string trace_line(const std::string& rule, const Path& p, const Term& t) {
  return rule + " @ " + path_to_string(p) + " : " + to_string(t);
}

json step_json(const std::string& rule, const Path& p, const Term& t) {
  return json{{"rule", rule}, {"position", path_to_string(p)}, {"term", to_string(t)}};
}

struct Options {
  std::string format = "text";
  std::string strategy = "lo";
  std::size_t max_steps = 1000;
  std::size_t budget_nodes = 50000;
  std::size_t budget_steps = 250000;
  std::string type_eq = "multiset";
  bool json() const { return format == "json"; }
  Budget budget() const { return Budget{budget_nodes, budget_steps}; }
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_check(const Options& o, const std::string& arg) {
  Term t = parse_sterm(input(arg));
  LinearityReport r = t.has_sub() ? check_sterm(t) : check_linear(t);
  if (o.json()) {
    json v = json::array();
    for (auto& x : r.violations)
      v.push_back(json{{"position", path_to_string(x.position)}, {"rule", x.rule}, {"variable", x.variable},
                       {"message", x.message}});
    json j{{"term", to_string(t)}, {"linear", r.ok}, {"violations", v}};
    if (r.ok) j["free"] = raw_free_vars(t);
    if (r.ok && !t.has_sub()) j["normal_form"] = is_normal_form(t);
    emit(j);
  } else if (r.ok) {
    std::cout << "linear\n";
    std::cout << "free:";
    for (auto& x : raw_free_vars(t)) std::cout << " " << x;
    std::cout << "\n";
    if (!t.has_sub()) std::cout << "normal form: " << (is_normal_form(t) ? "yes" : "no") << "\n";
  } else {
    std::cout << "not linear\n";
    for (auto& x : r.violations)
      std::cout << "  " << x.rule << " @ " << path_to_string(x.position) << " (" << x.variable << "): " << x.message
                << "\n";
  }
  return r.ok ? 0 : 1;
}

int cmd_embed(const Options& o, const std::string& arg) {
  Term t = to_resource(parse_plain(input(arg)));
  if (o.json()) emit(json{{"term", to_string(t)}});
  else std::cout << t << "\n";
  return 0;
}

int cmd_project(const Options& o, const std::string& arg) {
  Term m = parse_term(input(arg));
  if (!is_linear(m)) {
    std::cerr << "rcl: not a linear term\n";
    return 1;
  }
  Term t = to_plain(m);
  if (o.json()) emit(json{{"term", to_string(t)}});
  else std::cout << t << "\n";
  return 0;
}

int cmd_subst(const Options& o, const std::vector<std::string>& args) {
  Term start;
  if (args.size() == 3) {
    Term m = parse_term(input(args[0])), n = parse_term(input(args[1]));
    Term r = substitute(m, n, args[2]);
    if (o.json()) emit(json{{"term", to_string(r)}});
    else std::cout << r << "\n";
    return 0;
  }
  if (args.size() != 1) throw UsageError("subst takes STERM, or M N x");
  start = parse_sterm(input(args[0]));
  if (!check_sterm(start).ok) {
    std::cerr << "rcl: not a well-formed term with substitutions\n";
    return 1;
  }
  auto r = eval_subst(start);
  Term cur = start;
  json steps = json::array();
  for (auto& st : r.trace) {
    cur = replay_step(cur, st);
    if (o.json()) steps.push_back(step_json(subst_rule_name(st.rule), st.position, cur));
    else std::cout << trace_line(subst_rule_name(st.rule), st.position, cur) << "\n";
  }
  if (o.json()) emit(json{{"steps", steps}, {"result", to_string(r.term)}});
  else std::cout << "result: " << r.term << "\n";
  return 0;
}

Term wellformed(const std::string& arg) {
  Term t = parse_term(input(arg));
  auto r = check_linear(t);
  if (!r.ok) throw UsageError("not a linear term: " + r.violations[0].message);
  return t;
}

int cmd_reduce(const Options& o, const std::string& arg) {
  auto strat = strategy_from_name(o.strategy);
  if (!strat) throw UsageError("unknown strategy " + o.strategy);
  Term t = wellformed(arg);
  auto r = normalize(t, *strat, o.max_steps);
  json steps = json::array();
  for (auto& s : r.trace) {
    if (o.json()) steps.push_back(step_json(rule_name(s.rule), s.position, s.after));
    else std::cout << trace_line(rule_name(s.rule), s.position, s.after) << "\n";
  }
  if (o.json()) {
    emit(json{{"strategy", o.strategy}, {"steps", steps}, {"normal", r.normal}, {"result", to_string(r.term)}});
  } else if (r.normal) {
    std::cout << "normal form after " << r.trace.size() << " step(s): " << r.term << "\n";
  } else {
    std::cout << "step limit " << o.max_steps << " reached: " << r.term << "\n";
  }
  return r.normal ? 0 : 1;
}

int cmd_graph(const Options& o, const std::string& arg) {
  Term t = wellformed(arg);
  auto g = explore(t, o.budget());
  if (o.json()) {
    std::cout << graph_to_json(g) << "\n";
  } else {
    std::cout << "nodes: " << g.nodes.size() << "\nedges: " << g.edges.size() << "\n";
    std::cout << "complete: " << (g.complete ? "yes" : "no") << "\n";
    if (g.cycle) {
      std::cout << "cycle:";
      for (auto v : *g.cycle) std::cout << " " << v;
      std::cout << "\n";
    } else if (g.complete) {
      std::cout << "longest path: " << longest_path(g) << "\n";
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      std::cout << i << ": " << g.nodes[i].term << (g.nodes[i].normal ? "   [normal]" : "") << "\n";
      for (auto e : g.out[i]) {
        auto& ed = g.edges[e];
        std::cout << "    " << rule_name(ed.step.rule) << " @ " << path_to_string(ed.step.position) << " -> " << ed.to
                  << "\n";
      }
    }
  }
  return g.complete ? 0 : 1;
}

void print_deriv(const Options& o, const Deriv& d) {
  if (o.json()) std::cout << deriv_to_json(d) << "\n";
  else std::cout << judgment_string(d) << "\n\n" << deriv_to_text(d);
}

int cmd_nf_type(const Options& o, const std::string& arg) {
  Term t = wellformed(arg);
  if (!is_normal_form(t)) {
    std::cerr << "rcl: not a normal form\n";
    return 1;
  }
  print_deriv(o, nf_type(t));
  return 0;
}

int cmd_certify(const Options& o, const std::string& arg) {
  Term t = wellformed(arg);
  auto r = certify_sn(t, o.budget());
  if (o.json()) {
    json j{{"verdict", cert_verdict_name(r.verdict)}};
    if (r.derivation) j["derivation"] = json::parse(deriv_to_json(*r.derivation));
    if (r.verdict == CertVerdict::NotSN) {
      json c = json::array();
      for (auto v : r.sn.witness) c.push_back(to_string(r.sn.graph.nodes[v].term));
      j["cycle"] = c;
    }
    if (!r.note.empty()) j["note"] = r.note;
    emit(j);
  } else {
    std::cout << cert_verdict_name(r.verdict) << "\n";
    if (r.derivation) {
      std::cout << "\n";
      print_deriv(o, *r.derivation);
    }
    if (r.verdict == CertVerdict::NotSN) {
      std::cout << "reduction path returning to an earlier term:\n";
      for (auto v : r.sn.witness) std::cout << "  " << r.sn.graph.nodes[v].term << "\n";
    }
    if (!r.note.empty()) std::cout << r.note << "\n";
  }
  return r.verdict == CertVerdict::Certified ? 0 : 1;
}

int cmd_check_deriv(const Options& o, const std::string& arg) {
  std::string path = !arg.empty() && arg[0] == '@' ? arg.substr(1) : arg;
  Deriv d = deriv_from_json(read_file(path));
  TypeEq mode = o.type_eq == "idempotent" ? TypeEq::Idempotent : TypeEq::Multiset;
  auto errs = check_derivation(d, mode);
  if (o.json()) {
    json e = json::array();
    for (auto& x : errs) e.push_back(issue_to_string(x));
    emit(json{{"ok", errs.empty()}, {"judgment", judgment_string(d)}, {"errors", e}});
  } else if (errs.empty()) {
    std::cout << "ok: " << judgment_string(d) << "\n";
  } else {
    for (auto& x : errs) std::cout << issue_to_string(x) << "\n";
  }
  return errs.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource control lambda calculus workbench"};
  app.require_subcommand(1);
  Options o;
  std::string term;
  std::vector<std::string> subst_args;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_budget = [&](CLI::App* c) {
    c->add_option("--budget-nodes", o.budget_nodes, "Node budget for graph exploration");
    c->add_option("--budget-steps", o.budget_steps, "Edge budget for graph exploration");
  };

  auto* check = app.add_subcommand("check", "Check linearity and list free variables");
  check->add_option("term", term, "Term, or @file")->required();
  auto* embed = app.add_subcommand("embed", "Translate a plain lambda term");
  embed->add_option("term", term, "Plain term, or @file")->required();
  auto* project = app.add_subcommand("project", "Forget erasures and duplications");
  project->add_option("term", term, "Term, or @file")->required();
  auto* subst = app.add_subcommand("subst", "Evaluate explicit substitutions");
  subst->add_option("args", subst_args, "STERM, or M N x")->required();
  auto* reduce = app.add_subcommand("reduce", "Reduce to normal form");
  reduce->add_option("term", term, "Term, or @file")->required();
  reduce->add_option("--strategy", o.strategy, "lo (leftmost-outermost) or ef (exhaustive-first)")
      ->check(CLI::IsMember({"lo", "ef", "leftmost-outermost", "exhaustive-first"}));
  reduce->add_option("--max-steps", o.max_steps, "Step limit");
  auto* graph = app.add_subcommand("graph", "Explore the reduction graph");
  graph->add_option("term", term, "Term, or @file")->required();
  add_budget(graph);
  auto* nf = app.add_subcommand("nf-type", "Type a normal form");
  nf->add_option("term", term, "Term, or @file")->required();
  auto* cert = app.add_subcommand("certify-sn", "Certify strong normalisation with a typing");
  cert->add_option("term", term, "Term, or @file")->required();
  add_budget(cert);
  auto* cd = app.add_subcommand("check-deriv", "Validate a derivation file");
  cd->add_option("file", term, "Derivation JSON file")->required();
  cd->add_option("--type-eq", o.type_eq, "Intersection equality")->check(CLI::IsMember({"multiset", "idempotent"}));
  for (auto* c : {check, embed, project, subst, reduce, graph, nf, cert, cd}) add_format(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(o, term);
    if (*embed) return cmd_embed(o, term);
    if (*project) return cmd_project(o, term);
    if (*subst) return cmd_subst(o, subst_args);
    if (*reduce) return cmd_reduce(o, term);
    if (*graph) return cmd_graph(o, term);
    if (*nf) return cmd_nf_type(o, term);
    if (*cert) return cmd_certify(o, term);
    if (*cd) return cmd_check_deriv(o, term);
  } catch (const UsageError& e) {
    std::cerr << "rcl: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "rcl: parse error at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rcl: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
