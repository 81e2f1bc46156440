// Microbenchmarks for the hot paths: the forward pass over several carrier
// types, the amortized expectation route against the per-feature route,
// polynomial arithmetic, cutset traversal and checkpointed replay. Layered
// graphs alternate single-arc MUL layers with full-width ADD layers so
// values grow by the width only once per two layers and stay finite at
// every benchmarked size.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "semigraph/cutset.hpp"
#include "semigraph/engine.hpp"
#include "semigraph/expectations.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/natpoly.hpp"
#include "semigraph/semialgebra.hpp"
#include "semigraph/semiring.hpp"

namespace {

using namespace semigraph;

Graph layered_graph(int layers, int width) {
  std::vector<Arc> arcs;
  std::map<int, OpTag> ops;
  for (int l = 1; l < layers; ++l)
    for (int i = 0; i < width; ++i) {
      const int v = l * width + i;
      if (l % 2 == 1) {
        ops[v] = OpTag::MUL;
        arcs.push_back({(l - 1) * width + i, v});
      } else {
        ops[v] = OpTag::ADD;
        for (int j = 0; j < width; ++j)
          arcs.push_back({(l - 1) * width + j, v});
      }
    }
  return build_graph(layers * width, arcs, ops);
}

std::map<int, Value> unit_xi(const Graph& g, const Value& x) {
  std::map<int, Value> xi;
  for (int v : g.sources()) xi[v] = x;
  return xi;
}

void BM_forward_real(benchmark::State& state) {
  const Graph g = layered_graph(static_cast<int>(state.range(0)), 3);
  const Semiring s = semiring_instance("real");
  const std::map<int, Value> xi = unit_xi(g, Value(1.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(forward(g, s, xi).sink_sum);
  state.SetItemsProcessed(state.iterations() * g.n_elements());
}
BENCHMARK(BM_forward_real)->Arg(8)->Arg(32)->Arg(128);

void BM_forward_logreal(benchmark::State& state) {
  const Graph g = layered_graph(static_cast<int>(state.range(0)), 3);
  const Semiring s = semiring_instance("logreal");
  const std::map<int, Value> xi = unit_xi(g, Value(0.0));  // log 1
  for (auto _ : state)
    benchmark::DoNotOptimize(forward(g, s, xi).sink_sum);
  state.SetItemsProcessed(state.iterations() * g.n_elements());
}
BENCHMARK(BM_forward_logreal)->Arg(8)->Arg(32)->Arg(128);

void BM_forward_first_order_pair(benchmark::State& state) {
  const Graph g = layered_graph(static_cast<int>(state.range(0)), 3);
  const Semialgebra ext =
      bc1_extension(semialgebra_from_semiring(semiring_instance("real")));
  const Semiring view = ext.semiring_view();
  const std::map<int, Value> xi = unit_xi(
      g, Value(tensor_add(ext.basis(0, Value(1.0)), ext.basis(1, Value(0.5)))));
  for (auto _ : state)
    benchmark::DoNotOptimize(forward(g, view, xi).sink_sum);
  state.SetItemsProcessed(state.iterations() * g.n_elements());
}
BENCHMARK(BM_forward_first_order_pair)->Arg(8)->Arg(32)->Arg(128);

void BM_forward_backward(benchmark::State& state) {
  const Graph g = layered_graph(static_cast<int>(state.range(0)), 3);
  const Semialgebra a = semialgebra_from_semiring(semiring_instance("real"));
  const Semialgebra ext = bc1_extension(a);
  std::map<int, TensorValue> xi;
  for (int v : g.sources())
    xi[v] = tensor_add(ext.basis(0, Value(1.0)), ext.basis(1, Value(0.5)));
  for (auto _ : state)
    benchmark::DoNotOptimize(forward_backward(g, a, xi).combined);
  state.SetItemsProcessed(state.iterations() * g.n_elements());
}
BENCHMARK(BM_forward_backward)->Arg(8)->Arg(32)->Arg(128);

// The amortized route against the per-feature route, six features each.
void expectation_inputs(const Graph& g, std::map<int, double>& xi0,
                        std::vector<FeatureMap>& features) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> psi(-1.0, 1.0);
  for (int v : g.sources()) xi0[v] = 1.0;
  features.assign(6, {});
  for (FeatureMap& f : features)
    for (int v : g.sources()) f[v] = psi(rng);
}

void BM_expectations_amortized(benchmark::State& state) {
  const Graph g = layered_graph(static_cast<int>(state.range(0)), 3);
  std::map<int, double> xi0;
  std::vector<FeatureMap> features;
  expectation_inputs(g, xi0, features);
  for (auto _ : state)
    benchmark::DoNotOptimize(expectations_fb(g, xi0, features).numerators);
}
BENCHMARK(BM_expectations_amortized)->Arg(16)->Arg(64);

void BM_expectations_per_feature(benchmark::State& state) {
  const Graph g = layered_graph(static_cast<int>(state.range(0)), 3);
  std::map<int, double> xi0;
  std::vector<FeatureMap> features;
  expectation_inputs(g, xi0, features);
  for (auto _ : state)
    benchmark::DoNotOptimize(expectations_npass(g, xi0, features).numerators);
}
BENCHMARK(BM_expectations_per_feature)->Arg(16)->Arg(64);

void BM_natpoly_mul(benchmark::State& state) {
  const int n_vars = 4;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> expo(0, 5), coeff(1, 9);
  auto random_poly = [&](int terms) {
    NatPoly p = natpoly_zero(n_vars);
    for (int t = 0; t < terms; ++t) {
      NatPoly::Exponents e(n_vars);
      for (int i = 0; i < n_vars; ++i) e[i] = expo(rng);
      p.terms[e] += coeff(rng);
    }
    return p;
  };
  const NatPoly p = random_poly(static_cast<int>(state.range(0)));
  const NatPoly q = random_poly(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(natpoly_mul(p, q).terms.size());
}
BENCHMARK(BM_natpoly_mul)->Arg(10)->Arg(50);

void BM_cutset_walk(benchmark::State& state) {
  const Graph g = layered_graph(static_cast<int>(state.range(0)), 3);
  std::vector<Element> start;
  for (int v : g.sources()) start.push_back(node_elem(v));
  std::sort(start.begin(), start.end());
  for (auto _ : state) {
    CutsetWalker w(g, Direction::FORWARD, start);
    while (!w.at_terminal()) benchmark::DoNotOptimize(w.step().x.id);
  }
  state.SetItemsProcessed(state.iterations() * g.n_elements());
}
BENCHMARK(BM_cutset_walk)->Arg(32)->Arg(128);

void BM_checkpointed_replay(benchmark::State& state) {
  const Graph g = layered_graph(64, 3);
  const Semiring s = semiring_instance("real");
  const std::map<int, Value> xi = unit_xi(g, Value(1.0));
  const CheckpointPolicy policy =
      CheckpointPolicy::cutsets(static_cast<int>(state.range(0)));
  const ForwardResult stored = forward(g, s, xi, policy);
  const Element deepest = node_elem(g.sinks().back());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        checkpointed_replay(g, policy, stored, deepest));
}
BENCHMARK(BM_checkpointed_replay)->Arg(2)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
