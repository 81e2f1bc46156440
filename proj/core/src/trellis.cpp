// HMM trellis construction. Node and arc creation order is fixed so that
// two builds of the same model are identical graphs: per step, transition
// sources, then emission sources, then the pair MUL nodes (each wired
// previous-state, transition, emission), then the per-state ADD nodes.

#include "semigraph/trellis.hpp"

#include <cmath>

#include "semigraph/errors.hpp"

namespace semigraph {

namespace {

void check_row(const std::vector<double>& row, std::size_t want,
               const std::string& what) {
  if (row.size() != want)
    throw Error("InvalidModel", what + " has " + std::to_string(row.size()) +
                                    " entries, expected " +
                                    std::to_string(want));
  double sum = 0.0;
  for (double x : row) {
    if (!(x >= 0.0))
      throw Error("InvalidModel", what + " has a negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error("InvalidModel",
                what + " sums to " + std::to_string(sum) + ", expected 1");
}

}  // namespace

std::string trellis_source_str(const TrellisSource& s) {
  switch (s.role) {
    case TrellisRole::INIT_EMIT:
      return "init_emit[state=" + std::to_string(s.i) + "]";
    case TrellisRole::TRANSITION:
      return "transition[t=" + std::to_string(s.t) +
             "," + std::to_string(s.i) + "->" + std::to_string(s.j) + "]";
    case TrellisRole::EMISSION:
      return "emission[t=" + std::to_string(s.t) +
             ",state=" + std::to_string(s.i) + "]";
  }
  return "?";
}

TrellisCg trellis_to_cg(const Trellis& t) {
  const int k = t.num_states;
  const int horizon = t.horizon;
  if (k < 1) throw Error("InvalidModel", "need at least one state");
  if (horizon < 1) throw Error("InvalidModel", "need at least one observation");
  check_row(t.initial, k, "initial distribution");
  if (t.transition.size() != std::size_t(k))
    throw Error("InvalidModel", "transition matrix must have one row per state");
  for (int i = 0; i < k; ++i)
    check_row(t.transition[i], k, "transition row " + std::to_string(i));
  if (t.emission.size() != std::size_t(k))
    throw Error("InvalidModel", "emission matrix must have one row per state");
  const std::size_t n_symbols = t.emission.empty() ? 0 : t.emission[0].size();
  if (n_symbols == 0) throw Error("InvalidModel", "need at least one symbol");
  for (int i = 0; i < k; ++i)
    check_row(t.emission[i], n_symbols, "emission row " + std::to_string(i));
  if (t.observations.size() != std::size_t(horizon))
    throw Error("InvalidModel",
                "observation sequence length must equal the horizon");
  for (int obs : t.observations)
    if (obs < 0 || std::size_t(obs) >= n_symbols)
      throw Error("InvalidModel",
                  "observation " + std::to_string(obs) + " out of range");

  TrellisCg out;
  std::vector<Arc> arcs;
  std::map<int, OpTag> tags;
  int next_node = 0;
  auto new_source = [&](TrellisSource src, double value) {
    const int id = next_node++;
    out.xi[id] = value;
    out.legend.emplace(id, src);
    return id;
  };
  auto new_op = [&](OpTag tag) {
    const int id = next_node++;
    tags[id] = tag;
    return id;
  };

  out.state_node.assign(horizon, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i)
    out.state_node[0][i] =
        new_source({TrellisRole::INIT_EMIT, 0, i, -1},
                   t.initial[i] * t.emission[i][t.observations[0]]);

  for (int step = 1; step < horizon; ++step) {
    std::vector<std::vector<int>> tr_node(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        tr_node[i][j] = new_source({TrellisRole::TRANSITION, step, i, j},
                                   t.transition[i][j]);
    std::vector<int> em_node(k);
    for (int j = 0; j < k; ++j)
      em_node[j] = new_source({TrellisRole::EMISSION, step, j, -1},
                              t.emission[j][t.observations[step]]);
    std::vector<std::vector<int>> mul_node(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const int m = new_op(OpTag::MUL);
        mul_node[i][j] = m;
        arcs.push_back({out.state_node[step - 1][i], m});
        arcs.push_back({tr_node[i][j], m});
        arcs.push_back({em_node[j], m});
      }
    for (int j = 0; j < k; ++j) {
      const int add = new_op(OpTag::ADD);
      out.state_node[step][j] = add;
      for (int i = 0; i < k; ++i) arcs.push_back({mul_node[i][j], add});
    }
  }

  out.graph = build_graph(next_node, arcs, tags);
  return out;
}

}  // namespace semigraph
