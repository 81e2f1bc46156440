// ZDD translation. poly(bot) = 0, poly(top) = 1, and
// poly(node) = poly(lo) + x_var * poly(hi); the graph mirrors that
// recursion with one shared node per live diagram node. Branches that are
// structurally zero are omitted entirely rather than represented, so the
// translation of a node with a dead branch collapses to the other branch
// and single-factor products collapse to the factor itself.

#include "semigraph/zdd.hpp"

#include <algorithm>

#include "semigraph/engine.hpp"
#include "semigraph/errors.hpp"

namespace semigraph {

std::string zdd_source_str(const ZddSource& s) {
  if (s.role == ZddRole::CONST_ONE) return "const_one";
  return "x" + std::to_string(s.var);
}

namespace {

struct Shape {
  std::vector<char> reachable;  // per diagram node, from the root
  std::vector<char> alive;      // per diagram node, poly != 0
  std::vector<char> var_used;   // variable source needed
  bool unit_needed = false;     // constant-1 source needed
};

void validate(const Zdd& z) {
  auto check_ref = [&](int ref, int parent) {
    if (ref == kZddBot || ref == kZddTop) return;
    if (ref < 0 || ref >= static_cast<int>(z.nodes.size()))
      throw Error("InvalidModel",
                  "child reference " + std::to_string(ref) + " out of range");
    if (parent >= 0 && z.nodes[ref].var <= z.nodes[parent].var)
      throw Error("InvalidModel",
                  "variable order violation: node " + std::to_string(parent) +
                      " (x" + std::to_string(z.nodes[parent].var) +
                      ") points to node " + std::to_string(ref) + " (x" +
                      std::to_string(z.nodes[ref].var) + ")");
  };
  for (int u = 0; u < static_cast<int>(z.nodes.size()); ++u) {
    if (z.nodes[u].var < 0 || z.nodes[u].var >= z.n_vars)
      throw Error("InvalidModel", "node " + std::to_string(u) +
                                      " has variable out of range");
    check_ref(z.nodes[u].lo, u);
    check_ref(z.nodes[u].hi, u);
  }
  check_ref(z.root, -1);
}

bool ref_alive(const std::vector<char>& alive, int ref) {
  if (ref == kZddBot) return false;
  if (ref == kZddTop) return true;
  return alive[ref];
}

Shape analyze(const Zdd& z) {
  Shape s;
  s.reachable.assign(z.nodes.size(), 0);
  s.alive.assign(z.nodes.size(), 0);
  s.var_used.assign(z.n_vars, 0);

  // Liveness bottom-up: the variable-order validation makes child
  // references acyclic, so a reverse pass over any topological order works;
  // recursion over variables descending is simplest. Nodes are processed in
  // decreasing variable order.
  std::vector<int> order(z.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return z.nodes[a].var > z.nodes[b].var;
  });
  for (int u : order)
    s.alive[u] = ref_alive(s.alive, z.nodes[u].lo) ||
                 ref_alive(s.alive, z.nodes[u].hi);

  if (z.root == kZddTop) {
    s.unit_needed = true;
    return s;
  }
  if (z.root == kZddBot || !s.alive[z.root]) return s;

  std::vector<int> stack = {z.root};
  s.reachable[z.root] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    const auto& nd = z.nodes[u];
    if (ref_alive(s.alive, nd.hi)) {
      s.var_used[nd.var] = 1;
      if (nd.hi >= 0 && !s.reachable[nd.hi]) {
        s.reachable[nd.hi] = 1;
        stack.push_back(nd.hi);
      }
    }
    if (nd.lo == kZddTop) s.unit_needed = true;
    if (nd.lo >= 0 && s.alive[nd.lo] && !s.reachable[nd.lo]) {
      s.reachable[nd.lo] = 1;
      stack.push_back(nd.lo);
    }
  }
  return s;
}

}  // namespace

ZddCg zdd_to_cg(const Zdd& z) {
  validate(z);
  const Shape shape = analyze(z);

  ZddCg out;
  std::vector<Arc> arcs;
  std::map<int, OpTag> tags;
  int next_node = 0;

  for (int v = 0; v < z.n_vars; ++v)
    if (shape.var_used[v]) {
      out.var_source[v] = next_node;
      out.legend.emplace(next_node, ZddSource{ZddRole::VARIABLE, v});
      ++next_node;
    }
  if (shape.unit_needed) {
    out.unit_source = next_node;
    out.legend.emplace(next_node, ZddSource{ZddRole::CONST_ONE, -1});
    ++next_node;
  }
  int index = 0;
  for (const auto& [src, unused] : out.legend) out.indeterminate[src] = index++;

  // Graph node carrying poly(ref); -1 for a structural zero. Memoized per
  // diagram node so shared subdiagrams stay shared.
  std::vector<int> memo(z.nodes.size(), -1);
  std::vector<char> built(z.nodes.size(), 0);
  auto ref_value = [&](int ref, auto&& self) -> int {
    if (ref == kZddBot) return -1;
    if (ref == kZddTop) return out.unit_source;
    if (!shape.alive[ref]) return -1;
    if (built[ref]) return memo[ref];
    built[ref] = 1;
    const auto& nd = z.nodes[ref];
    const int lo_val = self(nd.lo, self);
    int hi_term = -1;
    if (ref_alive(shape.alive, nd.hi)) {
      const int var_src = out.var_source.at(nd.var);
      if (nd.hi == kZddTop) {
        hi_term = var_src;
      } else {
        const int hi_val = self(nd.hi, self);
        hi_term = next_node++;
        tags[hi_term] = OpTag::MUL;
        arcs.push_back({var_src, hi_term});
        arcs.push_back({hi_val, hi_term});
      }
    }
    int value;
    if (lo_val == -1) {
      value = hi_term;
    } else if (hi_term == -1) {
      value = lo_val;
    } else {
      value = next_node++;
      tags[value] = OpTag::ADD;
      arcs.push_back({lo_val, value});
      arcs.push_back({hi_term, value});
    }
    memo[ref] = value;
    return value;
  };
  if (z.root == kZddTop || (z.root >= 0 && shape.alive[z.root]))
    ref_value(z.root, ref_value);

  out.graph = build_graph(next_node, arcs, tags);
  return out;
}

NatPoly zdd_family_polynomial(const Zdd& z) {
  const ZddCg cg = zdd_to_cg(z);
  if (cg.graph.n_nodes() == 0) return natpoly_zero(z.n_vars);
  const ForwardResult fr = free_forward(cg.graph);
  const NatPoly& p = std::any_cast<const NatPoly&>(fr.sink_sum);

  // Rename free indeterminates (dense source order) to variable indexes;
  // the constant-1 source substitutes away.
  Semiring target = semiring_instance("natpoly(" + std::to_string(z.n_vars) + ")");
  std::vector<Value> values(cg.indeterminate.size(), target.one());
  for (const auto& [src, idx] : cg.indeterminate) {
    const ZddSource& s = cg.legend.at(src);
    if (s.role == ZddRole::VARIABLE)
      values[idx] = natpoly_var(z.n_vars, s.var);
  }
  return std::any_cast<NatPoly>(natpoly_eval(p, target, values));
}

std::map<int, Value> zdd_xi(const ZddCg& cg, const Semiring& s,
                            const std::vector<Value>& weights) {
  std::map<int, Value> xi;
  for (const auto& [var, src] : cg.var_source) {
    if (var < 0 || var >= static_cast<int>(weights.size()))
      throw Error("InvalidModel", "no weight for variable x" + std::to_string(var));
    if (!s.accepts(weights[var]))
      throw Error("SemiringMismatch", "weight for x" + std::to_string(var) +
                                          " is not a value of '" + s.name() + "'");
    xi[src] = weights[var];
  }
  if (cg.unit_source != -1) xi[cg.unit_source] = s.one();
  return xi;
}

std::vector<std::set<int>> zdd_family(const Zdd& z, std::size_t max_members) {
  validate(z);
  std::vector<std::vector<std::set<int>>> memo(z.nodes.size());
  std::vector<char> built(z.nodes.size(), 0);
  auto family = [&](int ref, auto&& self) -> std::vector<std::set<int>> {
    if (ref == kZddBot) return {};
    if (ref == kZddTop) return {std::set<int>{}};
    if (built[ref]) return memo[ref];
    built[ref] = 1;
    const auto& nd = z.nodes[ref];
    std::vector<std::set<int>> out = self(nd.lo, self);
    for (std::set<int> s : self(nd.hi, self)) {
      s.insert(nd.var);
      out.push_back(std::move(s));
      if (out.size() > max_members)
        throw Error("TooLarge", "family exceeds " +
                                    std::to_string(max_members) + " members");
    }
    memo[ref] = out;
    return out;
  };
  return family(z.root, family);
}

}  // namespace semigraph
