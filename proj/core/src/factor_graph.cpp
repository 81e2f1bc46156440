// Sum-product over an acyclic factor graph as a computation graph. The
// construction keeps the graph a tree: every message node has one consumer,
// so each monomial of the sink polynomial is one global configuration and
// contains each variable's assignment source exactly once — which is what
// makes marginals answerable with indicator features downstream.
//
// Single-input families pass through their input instead of materializing a
// copy node, so unary factors and leaf variables add no nodes.

#include "semigraph/factor_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "semigraph/errors.hpp"

namespace semigraph {

std::string factor_graph_source_str(const FactorGraphSource& s) {
  if (s.role == FactorGraphRole::VAR_ASSIGN)
    return "assign[x" + std::to_string(s.var) + "=" + std::to_string(s.value) +
           "]";
  std::string out = "eval[f" + std::to_string(s.factor) + "](";
  for (std::size_t i = 0; i < s.assignment.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.assignment[i]);
  }
  return out + ")";
}

namespace {

struct Builder {
  const FactorGraph& fg;
  FactorGraphCg out;
  std::vector<Arc> arcs;
  std::map<int, OpTag> tags;
  int next_node = 0;
  std::vector<std::vector<int>> var_factors;     // incident factors, ascending
  std::vector<std::vector<int>> eval_source;     // [factor][flat index]

  explicit Builder(const FactorGraph& f) : fg(f) {}

  int dom(int v) const { return fg.domain_sizes[v]; }

  int new_op(OpTag tag) {
    tags[next_node] = tag;
    return next_node++;
  }

  // A MUL/ADD node over the given inputs, except that a one-input family
  // passes its input through unchanged.
  int family_node(OpTag tag, const std::vector<int>& ins) {
    if (ins.size() == 1) return ins[0];
    const int id = new_op(tag);
    for (int in : ins) arcs.push_back({in, id});
    return id;
  }

  // Message from variable v toward parent_f (-1 at a root): per value x,
  // the assignment source times the child factor messages.
  std::vector<int> var_message(int v, int parent_f) {
    std::vector<std::vector<int>> child;
    for (int f : var_factors[v])
      if (f != parent_f) child.push_back(factor_message(f, v));
    std::vector<int> msg;
    msg.reserve(dom(v));
    for (int x = 0; x < dom(v); ++x) {
      std::vector<int> ins = {out.var_source.at({v, x})};
      for (const auto& cm : child) ins.push_back(cm[x]);
      msg.push_back(family_node(OpTag::MUL, ins));
    }
    return msg;
  }

  // Message from factor f toward parent_v: per parent value x, the sum over
  // scope assignments pinning parent_v to x of the evaluation source times
  // the child variable messages.
  std::vector<int> factor_message(int f, int parent_v) {
    const auto& scope = fg.factors[f].scope;
    std::map<int, std::vector<int>> child;
    for (int u : scope)
      if (u != parent_v) child.emplace(u, var_message(u, f));
    int parent_pos = -1;
    for (std::size_t i = 0; i < scope.size(); ++i)
      if (scope[i] == parent_v) parent_pos = static_cast<int>(i);

    std::vector<std::vector<int>> terms(dom(parent_v));
    const int n_entries = static_cast<int>(fg.factors[f].table.size());
    std::vector<int> a(scope.size());
    for (int flat = 0; flat < n_entries; ++flat) {
      int rem = flat;  // last scope variable fastest
      for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i) {
        a[i] = rem % dom(scope[i]);
        rem /= dom(scope[i]);
      }
      std::vector<int> ins = {eval_source[f][flat]};
      for (std::size_t i = 0; i < scope.size(); ++i)
        if (static_cast<int>(i) != parent_pos)
          ins.push_back(child.at(scope[i])[a[i]]);
      terms[a[parent_pos]].push_back(family_node(OpTag::MUL, ins));
    }
    std::vector<int> msg;
    msg.reserve(dom(parent_v));
    for (int x = 0; x < dom(parent_v); ++x)
      msg.push_back(family_node(OpTag::ADD, terms[x]));
    return msg;
  }
};

}  // namespace

FactorGraphCg factor_graph_to_cg(const FactorGraph& fg) {
  const int n_vars = static_cast<int>(fg.domain_sizes.size());
  const int n_factors = static_cast<int>(fg.factors.size());
  for (int v = 0; v < n_vars; ++v)
    if (fg.domain_sizes[v] < 1)
      throw Error("InvalidModel",
                  "variable " + std::to_string(v) + " has an empty domain");
  for (int f = 0; f < n_factors; ++f) {
    const auto& fac = fg.factors[f];
    if (fac.scope.empty())
      throw Error("InvalidModel",
                  "factor " + std::to_string(f) + " has an empty scope");
    std::size_t want = 1;
    std::vector<char> seen(n_vars, 0);
    for (int u : fac.scope) {
      if (u < 0 || u >= n_vars)
        throw Error("InvalidModel", "factor " + std::to_string(f) +
                                        " references unknown variable " +
                                        std::to_string(u));
      if (seen[u])
        throw Error("InvalidModel", "factor " + std::to_string(f) +
                                        " lists variable " + std::to_string(u) +
                                        " twice");
      seen[u] = 1;
      want *= fg.domain_sizes[u];
    }
    if (fac.table.size() != want)
      throw Error("InvalidModel",
                  "factor " + std::to_string(f) + " table has " +
                      std::to_string(fac.table.size()) + " entries, expected " +
                      std::to_string(want));
  }
  int root = fg.root == -1 ? n_vars - 1 : fg.root;
  if (n_vars == 0) throw Error("InvalidModel", "need at least one variable");
  if (root < 0 || root >= n_vars)
    throw Error("InvalidModel", "root variable out of range");

  Builder b(fg);

  // Cycle check and component labels over the bipartite structure.
  b.var_factors.assign(n_vars, {});
  for (int f = 0; f < n_factors; ++f)
    for (int u : fg.factors[f].scope) b.var_factors[u].push_back(f);
  std::vector<int> var_comp(n_vars, -1), factor_comp(n_factors, -1);
  std::vector<int> comp_seed;  // smallest variable id per component
  for (int v0 = 0; v0 < n_vars; ++v0) {
    if (var_comp[v0] != -1) continue;
    const int c = static_cast<int>(comp_seed.size());
    comp_seed.push_back(v0);
    // BFS over (is_factor, id) vertices; revisiting any vertex through a
    // non-parent edge means the structure has a cycle.
    struct Visit {
      bool is_factor;
      int id;
      int parent;  // factor id when !is_factor (or -1), variable id otherwise
    };
    std::deque<Visit> queue = {{false, v0, -1}};
    var_comp[v0] = c;
    while (!queue.empty()) {
      Visit cur = queue.front();
      queue.pop_front();
      if (!cur.is_factor) {
        for (int f : b.var_factors[cur.id]) {
          if (f == cur.parent) continue;
          if (factor_comp[f] != -1)
            throw Error("CyclicFactorGraph",
                        "the bipartite structure contains a cycle through "
                        "factor " +
                            std::to_string(f));
          factor_comp[f] = c;
          queue.push_back({true, f, cur.id});
        }
      } else {
        for (int u : fg.factors[cur.id].scope) {
          if (u == cur.parent) continue;
          if (var_comp[u] != -1)
            throw Error("CyclicFactorGraph",
                        "the bipartite structure contains a cycle through "
                        "variable " +
                            std::to_string(u));
          var_comp[u] = c;
          queue.push_back({false, u, cur.id});
        }
      }
    }
  }

  // Sources: every variable assignment first, then every factor entry.
  for (int v = 0; v < n_vars; ++v)
    for (int x = 0; x < fg.domain_sizes[v]; ++x) {
      const int id = b.next_node++;
      b.out.xi[id] = 1.0;
      b.out.legend.emplace(id, FactorGraphSource{FactorGraphRole::VAR_ASSIGN,
                                                 v, x, -1, {}});
      b.out.var_source[{v, x}] = id;
    }
  b.eval_source.assign(n_factors, {});
  for (int f = 0; f < n_factors; ++f) {
    const auto& fac = fg.factors[f];
    b.eval_source[f].resize(fac.table.size());
    std::vector<int> a(fac.scope.size());
    for (std::size_t flat = 0; flat < fac.table.size(); ++flat) {
      std::size_t rem = flat;
      for (int i = static_cast<int>(fac.scope.size()) - 1; i >= 0; --i) {
        a[i] = static_cast<int>(rem % fg.domain_sizes[fac.scope[i]]);
        rem /= fg.domain_sizes[fac.scope[i]];
      }
      const int id = b.next_node++;
      b.out.xi[id] = fac.table[flat];
      b.out.legend.emplace(
          id, FactorGraphSource{FactorGraphRole::FACTOR_EVAL, -1, -1, f, a});
      b.eval_source[f][flat] = id;
    }
  }

  // One belief sum per component, rooted at the designated root in its own
  // component and at the smallest variable id elsewhere.
  std::vector<int> comp_sums;
  for (std::size_t c = 0; c < comp_seed.size(); ++c) {
    const int r =
        var_comp[root] == static_cast<int>(c) ? root : comp_seed[c];
    comp_sums.push_back(b.family_node(OpTag::ADD, b.var_message(r, -1)));
  }
  if (comp_sums.size() > 1) b.family_node(OpTag::MUL, comp_sums);

  b.out.graph = build_graph(b.next_node, b.arcs, b.tags);
  return b.out;
}

}  // namespace semigraph
