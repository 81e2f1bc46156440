#pragma once

// Reference implementations for the test suite. Everything here is kept
// deliberately naive and structurally different from the library: plain
// recursions with memo tables instead of cutset walks, exhaustive
// enumeration instead of dynamic programming, central finite differences
// instead of algebraic derivatives. Tests compare library output against
// these, never the library against itself.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "semigraph/ad.hpp"
#include "semigraph/factor_graph.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/hypergraph.hpp"
#include "semigraph/semiring.hpp"
#include "semigraph/trellis.hpp"
#include "semigraph/zdd.hpp"

namespace semigraph::oracle {

// ---------------------------------------------------------------------------
// Naive graph evaluation: direct recursion on the defining equations.

// Value of every node by memoized recursion (sources take xi, ADD nodes sum
// their in-arc tail values in arc order, MUL nodes multiply them).
std::map<int, Value> node_values(const Graph& g, const Semiring& s,
                                 const std::map<int, Value>& xi);

// Sum of sink node values in ascending node id.
Value sink_sum(const Graph& g, const Semiring& s, const std::map<int, Value>& xi);

// Double-only variants, free of any library semiring machinery.
std::map<int, double> real_node_values(const Graph& g,
                                       const std::map<int, double>& xi);
double real_sink_sum(const Graph& g, const std::map<int, double>& xi);

// ---------------------------------------------------------------------------
// HMM oracles.

struct HmmEnumeration {
  double likelihood = 0.0;
  // Joint weight of (state at time t equals i, all observations); an
  // unnormalized state marginal. Indexed [t][i].
  std::vector<std::vector<double>> state_joint;
  // Joint weight of (state at t-1 equals i, state at t equals j, all
  // observations). Indexed [t][i][j] for t in 1..T-1; index 0 unused.
  std::vector<std::vector<std::vector<double>>> transition_joint;
};

// Brute force over all K^T state sequences.
HmmEnumeration hmm_enumerate(const Trellis& m);

struct HmmMatrixFb {
  double likelihood = 0.0;
  std::vector<std::vector<double>> gamma_joint;  // [t][i], unnormalized
};

// The classical matrix forward-backward recursion (alpha/beta tables).
HmmMatrixFb hmm_matrix_fb(const Trellis& m);

// ---------------------------------------------------------------------------
// Factor graph oracles: full enumeration over all configurations.

double fg_partition(const FactorGraph& fg);
// Unnormalized marginal weight of (variable = value), indexed [var][value].
std::vector<std::vector<double>> fg_marginals(const FactorGraph& fg);

// ---------------------------------------------------------------------------
// Hypergraph oracles.

// Inside value of every vertex reachable backwards from the target, by
// memoized recursion over incoming hyperedges.
std::map<int, double> hg_inside(const Hypergraph& h);

// Sum over explicitly enumerated derivations of the target (each derivation
// is a tree of hyperedges; its weight is the product of edge weights).
// Exponential; only for small inputs.
double hg_sum_over_derivations(const Hypergraph& h, std::size_t max_derivations = 200000);

// ---------------------------------------------------------------------------
// Tape oracles.

// Evaluates the tape's sink sum at an arbitrary point by naive recursion.
double tape_value(const AdTape& tape, const std::vector<double>& x);

// Central finite differences of tape_value around tape.x0.
std::vector<double> tape_fd_grad(const AdTape& tape, double step = 1e-5);

// ---------------------------------------------------------------------------
// Random model generators. All derive from the passed rng only, so a fixed
// seed reproduces the exact models.

// Random DAG with parallel arcs allowed, arcs oriented from lower to higher
// node id, at most max_sources sources and at most max_elements nodes+arcs.
Graph random_dag(std::mt19937_64& rng, int max_elements = 30, int max_sources = 10);

// Positive random source values in [lo, hi], one per source.
std::map<int, double> random_xi0(std::mt19937_64& rng, const Graph& g,
                                 double lo = 0.1, double hi = 2.0);

// Same values wrapped as semiring elements of `real`.
std::map<int, Value> random_real_xi(std::mt19937_64& rng, const Graph& g,
                                    double lo = 0.1, double hi = 2.0);

// Random tape over sin/cos/exp/abs/const/input tags; inputs stay away from
// the |.| kink.
AdTape random_tape(std::mt19937_64& rng, int max_elements = 40, int max_inputs = 8);

// Random stochastic model (rows normalized to sum to one).
Trellis random_trellis(std::mt19937_64& rng, int states, int horizon, int symbols);

// The classic five-binary-variable tree: factors over {0}, {1}, {0,1,2},
// {2,3}, {2,4}, with table entries drawn uniformly from [0.1, 2].
FactorGraph classic_tree_factor_graph(std::mt19937_64& rng);

// Random tree-shaped factor graph: up to max_vars variables with domain
// sizes 2 or 3, pairwise factors along a random tree plus some unary ones.
FactorGraph random_tree_factor_graph(std::mt19937_64& rng, int max_vars = 8);

// Random diagram respecting the variable order, with hi branches never
// pointing at the bottom terminal.
Zdd random_zdd(std::mt19937_64& rng, int n_vars);

// Random acyclic B-hypergraph where every vertex is derivable.
Hypergraph random_hypergraph(std::mt19937_64& rng, int max_vertices = 6);

// A fixed 3-word CKY-style chart with two derivations of the target;
// hand-computed inside value 0.0756.
Hypergraph cky_toy_chart();

// ---------------------------------------------------------------------------
// Comparison helper: |a-b| / max(1, |a|, |b|).
double rel_diff(double a, double b);

}  // namespace semigraph::oracle
