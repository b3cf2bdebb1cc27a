#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcl/reduce.hpp"

namespace rcl {

struct Budget {
  std::size_t nodes = 50000;
  std::size_t steps = 250000;
};

struct GraphNode {
  Term term;  // root keeps the input; other nodes hold canonical representatives
  std::string key;
  bool normal = false;
  bool expanded = false;
};

struct GraphEdge {
  std::size_t from, to;
  ReductionStep step;
};

// Reduction graph over canonical keys (structural equivalence plus alpha).
struct ReductionGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  bool complete = false;
  // Node sequence from the root whose last node repeats an earlier one.
  std::optional<std::vector<std::size_t>> cycle;
  std::vector<std::vector<std::size_t>> out;  // edge indices per node

  bool acyclic() const { return !cycle.has_value(); }
};

// Depth-first exploration. With stop_at_cycle the search ends at the first
// lasso found; otherwise the whole graph is built (cycles still recorded).
ReductionGraph explore(const Term& t, Budget b = {}, bool stop_at_cycle = false);

enum class SnVerdict { SN, NonSN, Unknown };
std::string verdict_name(SnVerdict v);

struct SnResult {
  SnVerdict verdict;
  ReductionGraph graph;
  std::vector<std::size_t> witness;  // NonSN: path ending in a repeated node
};

SnResult classify_sn(const Term& t, Budget b = {});

// Longest path from the root in edges. Throws on cyclic or incomplete graphs.
std::size_t longest_path(const ReductionGraph& g);
// Longest path from every node.
std::vector<std::size_t> longest_paths(const ReductionGraph& g);

std::string graph_to_json(const ReductionGraph& g);

}  // namespace rcl
