#pragma once

// Computation graphs: finite DAGs with parallel arcs, where every
// non-source node carries an ADD or MUL tag and sources carry input values.
// Nodes and arcs together form a poset (tail < arc < head generates the
// order); the traversal machinery in cutset.hpp walks antichain cutsets of
// that poset.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace semigraph {

enum class OpTag { ADD, MUL };

enum class ElementKind { NODE, ARC };

// A node or an arc of a graph. Ids are dense per kind: nodes 0..n-1,
// arcs 0..m-1 in declaration order.
struct Element {
  ElementKind kind;
  int id;

  bool operator==(const Element& o) const { return kind == o.kind && id == o.id; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const {
    if (kind != o.kind) return kind < o.kind;
    return id < o.id;
  }
};

inline Element node_elem(int id) { return {ElementKind::NODE, id}; }
inline Element arc_elem(int id) { return {ElementKind::ARC, id}; }

std::string element_str(const Element& e);

struct Arc {
  int tail;
  int head;
};

class Graph {
 public:
  int n_nodes() const { return n_nodes_; }
  int n_arcs() const { return static_cast<int>(arcs_.size()); }
  // Total element count, nodes plus arcs.
  int n_elements() const { return n_nodes_ + n_arcs(); }

  const Arc& arc(int id) const { return arcs_[id]; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool is_source(int node) const { return in_arcs_[node].empty(); }
  bool is_sink(int node) const { return out_arcs_[node].empty(); }
  // Op tag of a non-source node; asserts on sources.
  OpTag op(int node) const;

  const std::vector<int>& in_arcs(int node) const { return in_arcs_[node]; }
  const std::vector<int>& out_arcs(int node) const { return out_arcs_[node]; }

  // Source nodes in the order fixed at build time: ascending id unless an
  // explicit source order was given. This order indexes the indeterminates
  // of the free forward pass.
  const std::vector<int>& sources() const { return sources_; }
  const std::vector<int>& sinks() const { return sinks_; }

  // Position of a node in sources(), or -1.
  int source_index(int node) const { return source_index_[node]; }

  // Linear extension of the element poset: every element appears after all
  // elements below it, ties broken by taking nodes before arcs and smaller
  // ids first. Fixed at build time.
  const std::vector<Element>& schedule() const { return schedule_; }
  // Position of an element in schedule().
  int schedule_pos(const Element& e) const;

  bool contains(const Element& e) const {
    if (e.id < 0) return false;
    return e.kind == ElementKind::NODE ? e.id < n_nodes_ : e.id < n_arcs();
  }

 private:
  friend Graph build_graph(int n_nodes, const std::vector<Arc>& arcs,
                           const std::map<int, OpTag>& op_tags,
                           const std::vector<int>& source_order);

  int n_nodes_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int> op_;  // -1 for sources, else OpTag
  std::vector<std::vector<int>> in_arcs_;
  std::vector<std::vector<int>> out_arcs_;
  std::vector<int> sources_;
  std::vector<int> sinks_;
  std::vector<int> source_index_;
  std::vector<Element> schedule_;
  std::vector<int> node_pos_;  // schedule positions by kind
  std::vector<int> arc_pos_;
};

// Validates and indexes a graph. Throws Error("CycleDetected") if the arcs
// contain a directed cycle, Error("MissingOpTag") if a non-source node has
// no tag, Error("OpOnSource") if a source node has one, and
// Error("UnknownElement") if an arc endpoint or tag key is out of range.
// A non-empty source_order overrides the default ascending order of
// sources(); it must be a permutation of the source node set, else
// Error("BadSourceOrder").
Graph build_graph(int n_nodes, const std::vector<Arc>& arcs,
                  const std::map<int, OpTag>& op_tags,
                  const std::vector<int>& source_order = {});

// x <= y in the element poset (reachability through alternating node/arc
// covers). Throws Error("UnknownElement") if either element is not in g.
bool poset_leq(const Graph& g, const Element& x, const Element& y);

// Exposed for tests; identical to the order fixed in Graph::schedule().
std::vector<Element> topological_schedule(const Graph& g);

// Test oracle: true iff c is an antichain meeting every maximal chain of
// the element poset. Enumerates maximal chains exhaustively and throws
// Error("TooLarge") past max_chains.
bool is_antichain_cutset(const Graph& g, const std::vector<Element>& c,
                         std::uint64_t max_chains = 1000000);

}  // namespace semigraph
