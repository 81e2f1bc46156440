#pragma once

// Zero-suppressed decision diagram adapter. The graph it builds has one
// source per used variable; its free forward variable at the sink is the
// represented family's polynomial (one square-free monomial per member
// set), and a weighted forward pass computes the weighted model count.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semigraph/graph.hpp"
#include "semigraph/natpoly.hpp"
#include "semigraph/semiring.hpp"

namespace semigraph {

// Child references are node indexes, or the two terminals.
inline constexpr int kZddBot = -1;
inline constexpr int kZddTop = -2;

struct Zdd {
  struct Node {
    int var;
    int lo;
    int hi;
  };
  int n_vars = 0;
  std::vector<Node> nodes;
  int root = kZddBot;
};

enum class ZddRole { VARIABLE, CONST_ONE };

struct ZddSource {
  ZddRole role;
  int var = -1;
};

struct ZddCg {
  Graph graph;
  std::map<int, ZddSource> legend;      // source node id -> semantics
  std::map<int, int> var_source;        // variable -> source node id (used vars only)
  int unit_source = -1;                 // source carrying the constant 1, or -1
  // Indeterminate index of each source per free-forward source order.
  std::map<int, int> indeterminate;
};

std::string zdd_source_str(const ZddSource& s);

// Structural translation: a hi-edge multiplies in the node's variable
// source, a lo-edge passes through, bottom branches are omitted, and a
// top terminal consumed by a lo-edge (or as the root) becomes a constant-1
// source. Nodes whose both branches are structurally zero are treated as
// bottom. Throws Error("InvalidModel") on out-of-range children or
// variable order violations.
ZddCg zdd_to_cg(const Zdd& z);

// The family polynomial over x_0..x_{n_vars-1}: the free forward sink sum
// with the constant-1 source (if any) substituted away and variable
// indeterminates renumbered to variable indexes. Returns the zero
// polynomial for the empty family.
NatPoly zdd_family_polynomial(const Zdd& z);

// Source values (including the constant-1 source) for a weighted count:
// weights has one entry per ZDD variable.
std::map<int, Value> zdd_xi(const ZddCg& cg, const Semiring& s,
                            const std::vector<Value>& weights);

// Enumeration oracle: the member sets of the represented family. Intended
// for small diagrams; throws Error("TooLarge") past max_members.
std::vector<std::set<int>> zdd_family(const Zdd& z, std::size_t max_members = 1u << 20);

}  // namespace semigraph
