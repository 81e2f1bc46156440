// Directed B-hypergraph translation. inside(v) is the sum over hyperedges
// into v of the edge weight times the product of the tails' inside values;
// the graph mirrors that recursion for every vertex the target needs.
// Single-input families pass through their input, so an axiom-only vertex
// is just its weight source.

#include "semigraph/hypergraph.hpp"

#include "semigraph/errors.hpp"

namespace semigraph {

std::string hypergraph_source_str(const Hypergraph& h,
                                  const HypergraphSource& s) {
  const auto& e = h.edges[s.edge];
  if (!e.tag.empty()) return e.tag;
  std::string out = "edge[" + std::to_string(s.edge) + "]:v" +
                    std::to_string(e.head) + "<-(";
  for (std::size_t i = 0; i < e.tail.size(); ++i) {
    if (i) out += ",";
    out += "v" + std::to_string(e.tail[i]);
  }
  return out + ")";
}

HypergraphCg hypergraph_to_cg(const Hypergraph& h) {
  const int n = h.n_vertices;
  if (h.target < 0 || h.target >= n)
    throw Error("InvalidModel", "target vertex out of range");
  std::vector<std::vector<int>> edges_into(n);
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
    const auto& edge = h.edges[e];
    if (edge.head < 0 || edge.head >= n)
      throw Error("InvalidModel",
                  "edge " + std::to_string(e) + " has head out of range");
    for (int u : edge.tail)
      if (u < 0 || u >= n)
        throw Error("InvalidModel",
                    "edge " + std::to_string(e) + " has a tail out of range");
    edges_into[edge.head].push_back(e);
  }

  // Needed vertices, in dependency (post-) order; gray marks detect cycles.
  enum : char { WHITE, GRAY, BLACK };
  std::vector<char> color(n, WHITE);
  std::vector<int> build_order;
  auto visit = [&](int v, auto&& self) -> void {
    if (color[v] == BLACK) return;
    if (color[v] == GRAY)
      throw Error("CyclicHypergraph",
                  "vertex " + std::to_string(v) + " depends on itself");
    color[v] = GRAY;
    if (edges_into[v].empty())
      throw Error("UnderivableVertex",
                  "vertex " + std::to_string(v) + " has no incoming hyperedge");
    for (int e : edges_into[v])
      for (int u : h.edges[e].tail) self(u, self);
    color[v] = BLACK;
    build_order.push_back(v);
  };
  visit(h.target, visit);

  HypergraphCg out;
  std::vector<Arc> arcs;
  std::map<int, OpTag> tags;
  int next_node = 0;

  // Weight sources for every used hyperedge, ascending edge index.
  std::map<int, int> weight_source;
  for (int v : build_order)
    for (int e : edges_into[v]) weight_source[e] = -1;
  for (auto& [e, src] : weight_source) {
    src = next_node++;
    out.xi[src] = h.edges[e].weight;
    out.legend.emplace(src, HypergraphSource{e});
  }

  auto family_node = [&](OpTag tag, const std::vector<int>& ins) {
    if (ins.size() == 1) return ins[0];
    const int id = next_node++;
    tags[id] = tag;
    for (int in : ins) arcs.push_back({in, id});
    return id;
  };

  for (int v : build_order) {
    std::vector<int> terms;
    for (int e : edges_into[v]) {
      std::vector<int> ins = {weight_source.at(e)};
      for (int u : h.edges[e].tail) ins.push_back(out.vertex_node.at(u));
      terms.push_back(family_node(OpTag::MUL, ins));
    }
    out.vertex_node[v] = family_node(OpTag::ADD, terms);
  }

  out.graph = build_graph(next_node, arcs, tags);
  return out;
}

}  // namespace semigraph
