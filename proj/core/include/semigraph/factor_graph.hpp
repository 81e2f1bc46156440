#pragma once

// Acyclic factor graph adapter. Orients the tree toward a root variable
// and lays message passing out as a computation graph: variable-assignment
// sources (value 1) and factor-evaluation sources (table entries) feed
// per-value message node families, ending in root belief products and one
// partition-sum sink. Forests are handled by combining per-component sums
// with a final product node.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semigraph/graph.hpp"

namespace semigraph {

struct FactorGraph {
  std::vector<int> domain_sizes;  // one per variable
  struct Factor {
    std::vector<int> scope;     // ordered variable indexes
    std::vector<double> table;  // dense, last scope variable fastest
  };
  std::vector<Factor> factors;
  // GFB root variable; -1 means the last-declared variable. The partition
  // sum and all marginals are root-independent.
  int root = -1;
};

enum class FactorGraphRole { VAR_ASSIGN, FACTOR_EVAL };

struct FactorGraphSource {
  FactorGraphRole role;
  int var = -1;     // VAR_ASSIGN
  int value = -1;   // VAR_ASSIGN
  int factor = -1;  // FACTOR_EVAL
  std::vector<int> assignment;  // FACTOR_EVAL: values along the scope
};

struct FactorGraphCg {
  Graph graph;
  std::map<int, double> xi;
  std::map<int, FactorGraphSource> legend;
  // (variable, value) -> assignment source node id; the feature handle for
  // marginal queries.
  std::map<std::pair<int, int>, int> var_source;
};

std::string factor_graph_source_str(const FactorGraphSource& s);

// Throws Error("CyclicFactorGraph") when the bipartite structure has a
// cycle and Error("InvalidModel") on malformed scopes/tables.
FactorGraphCg factor_graph_to_cg(const FactorGraph& fg);

}  // namespace semigraph
