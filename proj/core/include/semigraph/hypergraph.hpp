#pragma once

// Directed B-hypergraph adapter (weighted deduction / inside values). Each
// vertex that feeds the target becomes an ADD node over one MUL node per
// incoming hyperedge; the MUL multiplies the hyperedge's weight source
// with the values of its tail vertices. The forward sink value at the
// target is its inside value.

#include <map>
#include <string>
#include <vector>

#include "semigraph/graph.hpp"

namespace semigraph {

struct Hypergraph {
  int n_vertices = 0;
  struct Edge {
    std::vector<int> tail;  // ordered; empty for axioms
    int head = 0;
    double weight = 1.0;
    std::string tag;  // label for the weight source; optional
  };
  std::vector<Edge> edges;
  int target = 0;
};

struct HypergraphSource {
  int edge;  // index into Hypergraph::edges
};

struct HypergraphCg {
  Graph graph;
  std::map<int, double> xi;
  std::map<int, HypergraphSource> legend;  // source node id -> hyperedge
  std::map<int, int> vertex_node;          // vertex -> ADD node id (built vertices only)
};

std::string hypergraph_source_str(const Hypergraph& h, const HypergraphSource& s);

// Only vertices the target depends on are built. Throws
// Error("CyclicHypergraph") if tail-to-head dependencies cycle and
// Error("UnderivableVertex") if a needed vertex has no incoming hyperedge.
HypergraphCg hypergraph_to_cg(const Hypergraph& h);

}  // namespace semigraph
