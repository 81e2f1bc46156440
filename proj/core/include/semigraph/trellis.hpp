#pragma once

// HMM trellis adapter. Builds the layered computation graph whose forward
// pass is the classical HMM forward algorithm: one source per state at
// t = 0 (initial probability fused with the first emission), and for each
// later step one transition source per state pair plus one emission source
// per state, multiplied into per-pair MUL nodes and summed into per-state
// ADD nodes.

#include <map>
#include <string>
#include <vector>

#include "semigraph/graph.hpp"

namespace semigraph {

struct Trellis {
  int num_states = 0;
  int horizon = 0;                              // T, number of observations
  std::vector<double> initial;                  // K entries
  std::vector<std::vector<double>> transition;  // K x K, row-stochastic
  std::vector<std::vector<double>> emission;    // K x #symbols
  std::vector<int> observations;                // length T
};

enum class TrellisRole { INIT_EMIT, TRANSITION, EMISSION };

struct TrellisSource {
  TrellisRole role;
  int t;  // time step
  int i;  // state (INIT_EMIT, EMISSION) or previous state (TRANSITION)
  int j;  // next state (TRANSITION only), else -1
};

struct TrellisCg {
  Graph graph;
  std::map<int, double> xi;               // source node id -> probability
  std::map<int, TrellisSource> legend;    // source node id -> semantics
  std::vector<std::vector<int>> state_node;  // [t][state] -> node carrying alpha_t(state)
};

std::string trellis_source_str(const TrellisSource& s);

// Throws Error("InvalidModel") on shape mismatches or rows not summing to
// one within 1e-9.
TrellisCg trellis_to_cg(const Trellis& t);

}  // namespace semigraph
