#include "semigraph/graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

#include "semigraph/errors.hpp"

namespace semigraph {

std::string element_str(const Element& e) {
  return (e.kind == ElementKind::NODE ? "n" : "a") + std::to_string(e.id);
}

OpTag Graph::op(int node) const {
  assert(node >= 0 && node < n_nodes_ && op_[node] >= 0);
  return static_cast<OpTag>(op_[node]);
}

int Graph::schedule_pos(const Element& e) const {
  return e.kind == ElementKind::NODE ? node_pos_[e.id] : arc_pos_[e.id];
}

namespace {

// Kahn's algorithm over the element poset. The ready set is ordered by
// (kind, id) with nodes first, which is the documented tie-break; it also
// detects cycles (leftover elements).
std::vector<Element> compute_schedule(int n_nodes, const std::vector<Arc>& arcs,
                                      const std::vector<std::vector<int>>& in_arcs) {
  std::vector<int> node_pending(n_nodes);
  for (int v = 0; v < n_nodes; ++v)
    node_pending[v] = static_cast<int>(in_arcs[v].size());
  std::vector<char> arc_pending(arcs.size(), 1);

  std::set<Element> ready;
  for (int v = 0; v < n_nodes; ++v)
    if (node_pending[v] == 0) ready.insert(node_elem(v));

  std::vector<Element> schedule;
  schedule.reserve(n_nodes + arcs.size());
  std::vector<std::vector<int>> out_arcs(n_nodes);
  for (int e = 0; e < static_cast<int>(arcs.size()); ++e)
    out_arcs[arcs[e].tail].push_back(e);

  while (!ready.empty()) {
    Element x = *ready.begin();
    ready.erase(ready.begin());
    schedule.push_back(x);
    if (x.kind == ElementKind::NODE) {
      for (int e : out_arcs[x.id]) {
        arc_pending[e] = 0;
        ready.insert(arc_elem(e));
      }
    } else {
      int head = arcs[x.id].head;
      if (--node_pending[head] == 0) ready.insert(node_elem(head));
    }
  }
  if (schedule.size() != static_cast<std::size_t>(n_nodes) + arcs.size())
    throw Error("CycleDetected", "arcs contain a directed cycle");
  return schedule;
}

}  // namespace

Graph build_graph(int n_nodes, const std::vector<Arc>& arcs,
                  const std::map<int, OpTag>& op_tags,
                  const std::vector<int>& source_order) {
  if (n_nodes < 0) throw Error("UnknownElement", "negative node count");
  Graph g;
  g.n_nodes_ = n_nodes;
  g.arcs_ = arcs;
  g.in_arcs_.assign(n_nodes, {});
  g.out_arcs_.assign(n_nodes, {});
  for (int e = 0; e < static_cast<int>(arcs.size()); ++e) {
    const Arc& a = arcs[e];
    if (a.tail < 0 || a.tail >= n_nodes || a.head < 0 || a.head >= n_nodes)
      throw Error("UnknownElement",
                  "arc " + std::to_string(e) + " references an undeclared node");
    g.out_arcs_[a.tail].push_back(e);
    g.in_arcs_[a.head].push_back(e);
  }

  g.op_.assign(n_nodes, -1);
  for (const auto& [v, tag] : op_tags) {
    if (v < 0 || v >= n_nodes)
      throw Error("UnknownElement",
                  "op tag on undeclared node " + std::to_string(v));
    if (g.in_arcs_[v].empty())
      throw Error("OpOnSource",
                  "node " + std::to_string(v) + " is a source but has an op tag");
    g.op_[v] = static_cast<int>(tag);
  }
  for (int v = 0; v < n_nodes; ++v) {
    if (!g.in_arcs_[v].empty() && g.op_[v] < 0)
      throw Error("MissingOpTag",
                  "internal node " + std::to_string(v) + " has no op tag");
  }

  g.source_index_.assign(n_nodes, -1);
  for (int v = 0; v < n_nodes; ++v) {
    if (g.in_arcs_[v].empty()) {
      g.source_index_[v] = static_cast<int>(g.sources_.size());
      g.sources_.push_back(v);
    }
    if (g.out_arcs_[v].empty()) g.sinks_.push_back(v);
  }
  if (!source_order.empty()) {
    if (source_order.size() != g.sources_.size())
      throw Error("BadSourceOrder",
                  "source order lists " + std::to_string(source_order.size()) +
                      " nodes but the graph has " +
                      std::to_string(g.sources_.size()) + " sources");
    std::vector<int> index(n_nodes, -1);
    for (int i = 0; i < static_cast<int>(source_order.size()); ++i) {
      const int v = source_order[i];
      if (v < 0 || v >= n_nodes || g.source_index_[v] < 0)
        throw Error("BadSourceOrder",
                    "node " + std::to_string(v) + " is not a source");
      if (index[v] >= 0)
        throw Error("BadSourceOrder",
                    "node " + std::to_string(v) + " listed twice");
      index[v] = i;
    }
    g.sources_ = source_order;
    g.source_index_ = std::move(index);
  }

  g.schedule_ = compute_schedule(n_nodes, arcs, g.in_arcs_);
  g.node_pos_.assign(n_nodes, -1);
  g.arc_pos_.assign(arcs.size(), -1);
  for (int i = 0; i < static_cast<int>(g.schedule_.size()); ++i) {
    const Element& e = g.schedule_[i];
    (e.kind == ElementKind::NODE ? g.node_pos_ : g.arc_pos_)[e.id] = i;
  }
  return g;
}

namespace {

// Node-to-node reachability by BFS (length-0 paths count).
bool node_reach(const Graph& g, int from, int to) {
  if (from == to) return true;
  std::vector<char> seen(g.n_nodes(), 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int e : g.out_arcs(v)) {
      int h = g.arc(e).head;
      if (h == to) return true;
      if (!seen[h]) {
        seen[h] = 1;
        queue.push_back(h);
      }
    }
  }
  return false;
}

void check_element(const Graph& g, const Element& e) {
  if (!g.contains(e))
    throw Error("UnknownElement", element_str(e) + " is not in the graph");
}

}  // namespace

bool poset_leq(const Graph& g, const Element& x, const Element& y) {
  check_element(g, x);
  check_element(g, y);
  if (x.kind == ElementKind::NODE) {
    if (y.kind == ElementKind::NODE) return node_reach(g, x.id, y.id);
    return node_reach(g, x.id, g.arc(y.id).tail);
  }
  if (y.kind == ElementKind::NODE) return node_reach(g, g.arc(x.id).head, y.id);
  if (x.id == y.id) return true;
  return node_reach(g, g.arc(x.id).head, g.arc(y.id).tail);
}

std::vector<Element> topological_schedule(const Graph& g) {
  return g.schedule();
}

namespace {

// DFS over maximal chains (source-to-sink paths listing nodes and arcs).
// Returns false as soon as a chain missing `hits` completes.
bool chains_hit(const Graph& g, int node, bool hit, const std::set<Element>& c,
                std::uint64_t& budget) {
  hit = hit || c.count(node_elem(node)) > 0;
  if (g.is_sink(node)) {
    if (budget == 0)
      throw Error("TooLarge", "maximal-chain enumeration exceeded the bound");
    --budget;
    return hit;
  }
  for (int e : g.out_arcs(node)) {
    bool arc_hit = hit || c.count(arc_elem(e)) > 0;
    if (!chains_hit(g, g.arc(e).head, arc_hit, c, budget)) return false;
  }
  return true;
}

}  // namespace

bool is_antichain_cutset(const Graph& g, const std::vector<Element>& c,
                         std::uint64_t max_chains) {
  for (const Element& e : c) check_element(g, e);
  std::set<Element> cs(c.begin(), c.end());  // duplicates are harmless
  std::vector<Element> u(cs.begin(), cs.end());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (poset_leq(g, u[i], u[j]) || poset_leq(g, u[j], u[i])) return false;

  std::uint64_t budget = max_chains;
  for (int v : g.sources())
    if (!chains_hit(g, v, false, cs, budget)) return false;
  return true;
}

}  // namespace semigraph
