#include "rcl/graph.hpp"

#include <json.hpp>
#include <unordered_map>

#include "rcl/equiv.hpp"
#include "rcl/normal_form.hpp"

namespace rcl {

std::string verdict_name(SnVerdict v) {
  switch (v) {
    case SnVerdict::SN: return "SN";
    case SnVerdict::NonSN: return "NotSN";
    case SnVerdict::Unknown: return "Unknown";
  }
  return "?";
}

ReductionGraph explore(const Term& t, Budget b, bool stop_at_cycle) {
  ReductionGraph g;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](Term term, std::string key) {
    std::size_t id = g.nodes.size();
    index.emplace(key, id);
    g.nodes.push_back(GraphNode{std::move(term), std::move(key), false, false});
    g.out.emplace_back();
    return id;
  };
  add(t, canonical_key(t));

  // 0 unvisited, 1 on stack, 2 done
  std::vector<char> color{0};
  struct Frame {
    std::size_t node;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  bool truncated = false;

  auto enter = [&](std::size_t id) {
    GraphNode& n = g.nodes[id];
    auto steps = enumerate_redexes(n.term);
    n.expanded = true;
    n.normal = steps.empty();
    color[id] = 1;
    stack.push_back(Frame{id, 0});
    for (auto& s : steps) {
      if (g.edges.size() >= b.steps) {
        truncated = true;
        return;
      }
      std::string key = canonical_key(s.after);
      std::size_t to;
      auto it = index.find(key);
      if (it != index.end()) {
        to = it->second;
      } else {
        if (g.nodes.size() >= b.nodes) {
          truncated = true;
          return;
        }
        to = add(equiv_canonical(s.after), key);
        color.push_back(0);
      }
      g.out[id].push_back(g.edges.size());
      g.edges.push_back(GraphEdge{id, to, std::move(s)});
    }
  };

  enter(0);
  while (!stack.empty() && !truncated) {
    Frame& f = stack.back();
    if (f.next == g.out[f.node].size()) {
      color[f.node] = 2;
      stack.pop_back();
      continue;
    }
    std::size_t to = g.edges[g.out[f.node][f.next++]].to;
    if (color[to] == 1) {
      if (!g.cycle) {
        std::vector<std::size_t> lasso;
        for (auto& fr : stack) lasso.push_back(fr.node);
        lasso.push_back(to);
        g.cycle = std::move(lasso);
      }
      if (stop_at_cycle) return g;
    } else if (color[to] == 0) {
      enter(to);
    }
  }
  g.complete = !truncated;
  return g;
}

SnResult classify_sn(const Term& t, Budget b) {
  SnResult r{SnVerdict::Unknown, explore(t, b, true), {}};
  if (r.graph.cycle) {
    r.verdict = SnVerdict::NonSN;
    r.witness = *r.graph.cycle;
  } else if (r.graph.complete) {
    r.verdict = SnVerdict::SN;
  }
  return r;
}

std::vector<std::size_t> longest_paths(const ReductionGraph& g) {
  if (!g.complete) throw ReduceError("longest path: graph is incomplete");
  if (g.cycle) throw ReduceError("longest path: graph has a cycle");
  std::vector<std::size_t> len(g.nodes.size(), 0);
  std::vector<char> done(g.nodes.size(), 0);
  // iterative post-order
  std::vector<std::pair<std::size_t, std::size_t>> st;
  for (std::size_t s = 0; s < g.nodes.size(); ++s) {
    if (done[s]) continue;
    st.push_back({s, 0});
    while (!st.empty()) {
      auto& [v, i] = st.back();
      if (i < g.out[v].size()) {
        std::size_t w = g.edges[g.out[v][i++]].to;
        if (!done[w]) st.push_back({w, 0});
        continue;
      }
      std::size_t best = 0;
      for (auto e : g.out[v]) best = std::max(best, len[g.edges[e].to] + 1);
      len[v] = best;
      done[v] = 1;
      st.pop_back();
    }
  }
  return len;
}

std::size_t longest_path(const ReductionGraph& g) { return longest_paths(g)[0]; }

std::string graph_to_json(const ReductionGraph& g) {
  nlohmann::ordered_json j;
  j["root"] = 0;
  j["complete"] = g.complete;
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    nlohmann::ordered_json n;
    n["id"] = i;
    n["term"] = to_string(g.nodes[i].term);
    n["normal"] = g.nodes[i].normal;
    n["expanded"] = g.nodes[i].expanded;
    auto succ = nlohmann::ordered_json::array();
    for (auto e : g.out[i]) {
      const auto& ed = g.edges[e];
      succ.push_back({{"to", ed.to}, {"rule", rule_name(ed.step.rule)}, {"position", path_to_string(ed.step.position)}});
    }
    n["edges"] = std::move(succ);
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  nlohmann::ordered_json stats;
  stats["nodes"] = g.nodes.size();
  stats["edges"] = g.edges.size();
  if (g.cycle) {
    stats["cycle"] = *g.cycle;
  } else if (g.complete) {
    stats["longest_path"] = longest_path(g);
  }
  j["stats"] = std::move(stats);
  return j.dump(2);
}

}  // namespace rcl
