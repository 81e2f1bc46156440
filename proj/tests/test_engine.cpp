#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "semigraph/bc.hpp"
#include "semigraph/cutset.hpp"
#include "semigraph/engine.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/natpoly.hpp"
#include "semigraph/semialgebra.hpp"

using namespace semigraph;

namespace {

double d(const Value& v) { return std::any_cast<double>(v); }

// Two sources, one MUL and one ADD joining into a final ADD:
// sink = s0*s1 + (s0+s1).
Graph join_graph() {
  return build_graph(5, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 4}, {3, 4}},
                     {{2, OpTag::MUL}, {3, OpTag::ADD}, {4, OpTag::ADD}});
}

// A single path of six ADD nodes after the source.
Graph chain_graph() {
  std::vector<Arc> arcs;
  std::map<int, OpTag> ops;
  for (int v = 1; v <= 6; ++v) {
    arcs.push_back({v - 1, v});
    ops[v] = OpTag::ADD;
  }
  return build_graph(7, arcs, ops);
}

NatPoly univariate(const std::vector<int>& coeffs) {
  NatPoly p = natpoly_zero(1);
  NatPoly power = natpoly_one(1);
  for (int c : coeffs) {
    p = natpoly_add(p, natpoly_mul(natpoly_const(1, c), power));
    power = natpoly_mul(power, natpoly_var(1, 0));
  }
  return p;
}

double eval_at(const NatPoly& p, double t) {
  return d(natpoly_eval(p, semiring_instance("real"), {Value(t)}));
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("forward computes the mixed add/mul value") {
  const Graph g = join_graph();
  const Semiring real = semiring_instance("real");
  const ForwardResult r = forward(g, real, {{0, Value(2.0)}, {1, Value(3.0)}});
  CHECK(d(r.sink_sum) == 2.0 * 3.0 + (2.0 + 3.0));
  CHECK(d(r.values.at(node_elem(2))) == 6.0);
  CHECK(d(r.values.at(node_elem(3))) == 5.0);
  CHECK(d(r.values.at(arc_elem(0))) == 2.0);  // arcs copy their tails
}

TEST_CASE("forward matches naive recursion on random graphs") {
  std::mt19937_64 rng(300);
  const Semiring real = semiring_instance("real");
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_dag(rng);
    const auto xi0 = oracle::random_xi0(rng, g);
    std::map<int, Value> xi;
    for (const auto& [v, w] : xi0) xi[v] = w;
    const ForwardResult r = forward(g, real, xi);
    const auto expected = oracle::real_node_values(g, xi0);
    for (int v = 0; v < g.n_nodes(); ++v)
      CHECK(oracle::rel_diff(d(r.values.at(node_elem(v))), expected.at(v)) < 1e-12);
    CHECK(oracle::rel_diff(d(r.sink_sum), oracle::real_sink_sum(g, xi0)) < 1e-12);
  }
}

TEST_CASE("multiple sinks contribute in node-id order") {
  // Sources 0,1 each feeding their own sink.
  const Graph g = build_graph(4, {{0, 2}, {1, 3}},
                              {{2, OpTag::ADD}, {3, OpTag::ADD}});
  const ForwardResult r =
      forward(g, semiring_instance("real"), {{0, Value(1.5)}, {1, Value(2.0)}});
  CHECK(d(r.sink_sum) == 3.5);
}

TEST_CASE("an isolated source is its own sink") {
  const Graph g = build_graph(1, {}, {});
  const ForwardResult r = forward(g, semiring_instance("real"), {{0, Value(4.0)}});
  CHECK(d(r.sink_sum) == 4.0);
}

TEST_CASE("forward validates its inputs") {
  const Graph g = join_graph();
  const Semiring real = semiring_instance("real");
  CHECK_THROWS_WITH_AS(forward(g, real, {{0, Value(2.0)}}),
                       doctest::Contains("SourceValueMissing"), Error);
  CHECK_THROWS_WITH_AS(
      forward(g, real, {{0, Value(2.0)}, {1, Value(3.0)}, {2, Value(1.0)}}),
      doctest::Contains("SourceValueMissing"), Error);
  CHECK_THROWS_WITH_AS(forward(g, real, {{0, Value(2.0)}, {1, Value(42)}}),
                       doctest::Contains("SemiringMismatch"), Error);
  CHECK_THROWS_WITH_AS(
      forward(g, real, {{0, Value(2.0)}, {1, Value(3.0)}}, CheckpointPolicy::cutsets(0)),
      doctest::Contains("BadStride"), Error);
}

TEST_CASE("retention follows the checkpoint policy") {
  const Graph g = join_graph();
  const Semiring real = semiring_instance("real");
  const std::map<int, Value> xi{{0, Value(2.0)}, {1, Value(3.0)}};

  const ForwardResult all = forward(g, real, xi, CheckpointPolicy::all());
  CHECK(static_cast<int>(all.values.size()) == g.n_elements());
  CHECK(all.checkpoints.empty());

  const ForwardResult nodes = forward(g, real, xi, CheckpointPolicy::nodes_only());
  CHECK(static_cast<int>(nodes.values.size()) == g.n_nodes());
  for (const auto& [e, v] : nodes.values) CHECK(e.kind == ElementKind::NODE);

  const ForwardResult cuts = forward(g, real, xi, CheckpointPolicy::cutsets(2));
  CHECK(!cuts.checkpoints.empty());
  // The first stored cutset is the source cutset.
  std::vector<Element> first = cuts.checkpoints.front();
  std::sort(first.begin(), first.end());
  CHECK(first == std::vector<Element>{node_elem(0), node_elem(1)});
  std::set<Element> stored;
  for (const auto& c : cuts.checkpoints) stored.insert(c.begin(), c.end());
  CHECK(stored == std::set<Element>(
                      [&] {
                        std::set<Element> keys;
                        for (const auto& [e, v] : cuts.values) keys.insert(e);
                        return keys;
                      }()));
}

TEST_CASE("replay recovers every dropped value bit-identically") {
  std::mt19937_64 rng(301);
  const Semiring real = semiring_instance("real");
  for (int t = 0; t < 20; ++t) {
    const Graph g = oracle::random_dag(rng);
    std::map<int, Value> xi;
    for (const auto& [v, w] : oracle::random_xi0(rng, g)) xi[v] = w;
    const ForwardResult truth = forward(g, real, xi, CheckpointPolicy::all());
    for (const CheckpointPolicy& policy :
         {CheckpointPolicy::all(), CheckpointPolicy::nodes_only(),
          CheckpointPolicy::cutsets(2), CheckpointPolicy::cutsets(4)}) {
      const ForwardResult stored = forward(g, real, xi, policy);
      CHECK(d(stored.sink_sum) == d(truth.sink_sum));
      for (int v = 0; v < g.n_nodes(); ++v) {
        const Element e = node_elem(v);
        CHECK(d(checkpointed_replay(g, policy, stored, e)) == d(truth.values.at(e)));
      }
      for (int a = 0; a < g.n_arcs(); ++a) {
        const Element e = arc_elem(a);
        CHECK(d(checkpointed_replay(g, policy, stored, e)) == d(truth.values.at(e)));
      }
    }
  }
}

TEST_CASE("stride-2 checkpoints on a six-level chain replay exactly") {
  const Graph g = chain_graph();
  const Semiring real = semiring_instance("real");
  const std::map<int, Value> xi{{0, Value(1.25)}};
  const ForwardResult truth = forward(g, real, xi, CheckpointPolicy::all());
  const ForwardResult stored = forward(g, real, xi, CheckpointPolicy::cutsets(2));
  CHECK(stored.values.size() < truth.values.size());
  for (int v = 0; v < g.n_nodes(); ++v)
    CHECK(d(checkpointed_replay(g, CheckpointPolicy::cutsets(2), stored, node_elem(v))) ==
          d(truth.values.at(node_elem(v))));
  CHECK_THROWS_WITH_AS(
      checkpointed_replay(g, CheckpointPolicy::cutsets(2), stored, node_elem(99)),
      doctest::Contains("UnknownElement"), Error);

  // Hand-pruning the stored data below an element makes it unreachable.
  ForwardResult pruned = stored;
  pruned.values.clear();
  pruned.checkpoints.clear();
  CHECK_THROWS_WITH_AS(
      checkpointed_replay(g, CheckpointPolicy::cutsets(2), pruned, node_elem(3)),
      doctest::Contains("InsufficientCheckpoints"), Error);
}

TEST_CASE("free forward names sources in source order") {
  const Graph g = join_graph();
  const ForwardResult r = free_forward(g);
  const auto sink = std::any_cast<NatPoly>(r.sink_sum);
  CHECK(natpoly_str(sink) == "x0*x1 + x0 + x1");

  // An explicit source order swaps the indeterminates.
  const Graph swapped =
      build_graph(5, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 4}, {3, 4}},
                  {{2, OpTag::MUL}, {3, OpTag::ADD}, {4, OpTag::ADD}}, {1, 0});
  const auto sink2 = std::any_cast<NatPoly>(free_forward(swapped).sink_sum);
  CHECK(natpoly_str(sink2) == "x0*x1 + x0 + x1");  // symmetric graph
  const Graph asym = build_graph(3, {{0, 2}, {0, 2}, {1, 2}}, {{2, OpTag::MUL}});
  CHECK(natpoly_str(std::any_cast<NatPoly>(free_forward(asym).sink_sum)) ==
        "x0^2*x1");
  const Graph asym_swapped =
      build_graph(3, {{0, 2}, {0, 2}, {1, 2}}, {{2, OpTag::MUL}}, {1, 0});
  CHECK(natpoly_str(std::any_cast<NatPoly>(free_forward(asym_swapped).sink_sum)) ==
        "x0*x1^2");
}

TEST_CASE("substitution principle on every element") {
  std::mt19937_64 rng(302);
  const Semiring real = semiring_instance("real");
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_dag(rng);
    const ForwardResult free_run = free_forward(g);
    const auto xi0 = oracle::random_xi0(rng, g);
    std::map<int, Value> xi;
    std::vector<Value> point;
    for (int v : g.sources()) {
      xi[v] = xi0.at(v);
      point.emplace_back(xi0.at(v));
    }
    const ForwardResult concrete = forward(g, real, xi);
    for (const auto& [e, poly] : free_run.values) {
      const double substituted =
          d(natpoly_eval(std::any_cast<NatPoly>(poly), real, point));
      CHECK(oracle::rel_diff(substituted, d(concrete.values.at(e))) < 1e-9);
    }
  }
}

TEST_CASE("substitution principle is exact over rationals") {
  std::mt19937_64 rng(303);
  const Semiring rat = semiring_instance("rational");
  std::uniform_int_distribution<int> num(1, 9), den(1, 9);
  for (int t = 0; t < 10; ++t) {
    const Graph g = oracle::random_dag(rng);
    std::map<int, Value> xi;
    std::vector<Value> point;
    for (int v : g.sources()) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      xi[v] = q;
      point.emplace_back(q);
    }
    const ForwardResult free_run = free_forward(g);
    const ForwardResult concrete = forward(g, rat, xi);
    for (const auto& [e, poly] : free_run.values)
      CHECK(std::any_cast<mpq_class>(
                natpoly_eval(std::any_cast<NatPoly>(poly), rat, point)) ==
            std::any_cast<mpq_class>(concrete.values.at(e)));
  }
}

TEST_CASE("free forward coincides with forward over the polynomial semiring") {
  const Graph g = join_graph();
  const int n = static_cast<int>(g.sources().size());
  const Semiring poly = semiring_instance("natpoly(" + std::to_string(n) + ")");
  std::map<int, Value> xi;
  for (int i = 0; i < n; ++i) xi[g.sources()[i]] = natpoly_var(n, i);
  const ForwardResult direct = forward(g, poly, xi);
  const ForwardResult free_run = free_forward(g);
  CHECK(std::any_cast<NatPoly>(direct.sink_sum) ==
        std::any_cast<NatPoly>(free_run.sink_sum));
}

TEST_CASE("parametrized forward with the exponential hom") {
  const Graph g = join_graph();
  const std::map<int, double> phi{{0, 0.3}, {1, -0.7}};
  const ForwardResult r = parametrized_forward(g, exp_hom(), phi);
  const double e0 = std::exp(0.3), e1 = std::exp(-0.7);
  CHECK(d(r.sink_sum) == doctest::Approx(e0 * e1 + e0 + e1));

  // phi identically zero turns every source into 1: the sink sum counts
  // the monomial mass of the free polynomial.
  const ForwardResult ones = parametrized_forward(g, exp_hom(), {{0, 0.0}, {1, 0.0}});
  const auto poly = std::any_cast<NatPoly>(free_forward(g).sink_sum);
  double mass = 0.0;
  for (const auto& [expo, coeff] : poly.terms) mass += coeff.get_d();
  CHECK(d(ones.sink_sum) == doctest::Approx(mass));
}

TEST_CASE("parametrized forward with rotations sums angles along paths") {
  // A two-step multiplication chain: sink value rotates by the angle sum.
  const Graph g = build_graph(4, {{0, 3}, {1, 3}, {2, 3}}, {{3, OpTag::MUL}});
  const std::map<int, double> phi{{0, 0.2}, {1, 0.5}, {2, -0.9}};
  const ForwardResult r = parametrized_forward(g, cos_sin_hom(), phi);
  const auto v = std::any_cast<std::complex<double>>(r.sink_sum);
  CHECK(v.real() == doctest::Approx(std::cos(0.2 + 0.5 - 0.9)));
  CHECK(v.imag() == doctest::Approx(std::sin(0.2 + 0.5 - 0.9)));
}

TEST_CASE("parametrized forward with first-order powers counts occurrences") {
  std::mt19937_64 rng(304);
  for (int t = 0; t < 10; ++t) {
    const Graph g = oracle::random_dag(rng);
    const std::vector<int>& sources = g.sources();
    // Indicator on one source.
    const int marked = sources[std::uniform_int_distribution<std::size_t>(
        0, sources.size() - 1)(rng)];
    std::map<int, double> phi;
    for (int v : sources) phi[v] = (v == marked) ? 1.0 : 0.0;
    const ForwardResult r = parametrized_forward(g, powers_hom(1), phi);
    const auto sink = std::any_cast<BCValue>(r.sink_sum);

    const auto poly = std::any_cast<NatPoly>(free_forward(g).sink_sum);
    const int index = g.source_index(marked);
    double mass = 0.0, occurrences = 0.0;
    for (const auto& [expo, coeff] : poly.terms) {
      mass += coeff.get_d();
      occurrences += coeff.get_d() * expo[index];
    }
    CHECK(d(sink.comps[0]) == doctest::Approx(mass));
    CHECK(d(sink.comps[1]) == doctest::Approx(occurrences));
  }
}

TEST_CASE("higher-order components are exact derivatives") {
  // Seed each source with the derivative sequence of a small integer
  // polynomial in t; the sink components must equal the derivatives of the
  // composed polynomial, obtained independently by symbolic
  // differentiation of the free forward value.
  std::mt19937_64 rng(305);
  const int order = 3;
  const Semiring bc = semiring_instance("bc(real," + std::to_string(order) + ")");
  const double t0 = 0.5;
  std::uniform_int_distribution<int> coeff(0, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = oracle::random_dag(rng, 24);
    // Univariate integer polynomial per source.
    std::map<int, NatPoly> source_poly;
    std::map<int, Value> xi;
    std::vector<Value> polys_in_order;
    for (int v : g.sources()) {
      const NatPoly p = univariate({coeff(rng), coeff(rng), coeff(rng)});
      source_poly[v] = p;
      BCValue seed;
      NatPoly deriv = p;
      for (int k = 0; k <= order; ++k) {
        seed.comps.emplace_back(eval_at(deriv, t0));
        deriv = natpoly_derivative(deriv, 0);
      }
      xi[v] = seed;
      polys_in_order.emplace_back(p);
    }
    // Composite polynomial in t via substitution into the free value.
    const auto free_poly = std::any_cast<NatPoly>(free_forward(g).sink_sum);
    NatPoly composite = std::any_cast<NatPoly>(
        natpoly_eval(free_poly, semiring_instance("natpoly(1)"), polys_in_order));

    const ForwardResult r = forward(g, bc, xi);
    const auto sink = std::any_cast<BCValue>(r.sink_sum);
    NatPoly deriv = composite;
    for (int k = 0; k <= order; ++k) {
      CHECK(oracle::rel_diff(d(sink.comps[k]), eval_at(deriv, t0)) < 1e-9);
      deriv = natpoly_derivative(deriv, 0);
    }
  }
}

TEST_CASE("log-domain runs agree with linear-domain runs") {
  std::mt19937_64 rng(306);
  const Semiring real = semiring_instance("real");
  const Semiring logreal = semiring_instance("logreal");
  for (int t = 0; t < 15; ++t) {
    const Graph g = oracle::random_dag(rng);
    const auto xi0 = oracle::random_xi0(rng, g, 0.2, 1.5);
    std::map<int, Value> xi, log_xi;
    for (const auto& [v, w] : xi0) {
      xi[v] = w;
      log_xi[v] = std::log(w);
    }
    const double lin = d(forward(g, real, xi).sink_sum);
    const double log_run = d(forward(g, logreal, log_xi).sink_sum);
    CHECK(oracle::rel_diff(log_run, std::log(lin)) < 1e-9);
  }
}

TEST_CASE("forward-backward reproduces the worked first-order run") {
  const Graph g = join_graph();
  const Semialgebra a = semialgebra_from_semiring(semiring_instance("real"));
  const Semialgebra ext = bc1_extension(a);
  // xi = w (x) e0 + w psi (x) e1 with w = (2,3), psi = (1,0).
  std::map<int, TensorValue> xi;
  xi[0] = tensor_add(ext.basis(0, 2.0), ext.basis(1, 2.0 * 1.0));
  xi[1] = ext.basis(0, 3.0);
  const BackwardResult r = forward_backward(g, a, xi);

  // Forward part: alpha0 is the plain weighted run.
  CHECK(d(tensor_scalar(std::any_cast<const TensorValue&>(r.alpha0.sink_sum))) ==
        11.0);
  // Sinks carry beta = 1.
  CHECK(d(tensor_scalar(r.beta.at(4))) == 1.0);
  // beta(0) = d(sink)/d(s0) = s1 + 1 = 4; beta(1) = s0 + 1 = 3.
  CHECK(d(tensor_scalar(r.beta.at(0))) == 4.0);
  CHECK(d(tensor_scalar(r.beta.at(1))) == 3.0);
  // combined = Z (x) e0 + sum_src P1(xi) beta (x) e1 = (11, 2*4).
  const auto dense = tensor_dense(r.combined);
  CHECK(d(dense[0]) == 11.0);
  CHECK(d(dense[1]) == 8.0);

  // Arc-level backward values.
  CHECK(d(tensor_scalar(backward_arc_value(g, r, 4))) == 1.0);  // into final ADD
  // Arc 0 feeds the MUL node 2: beta(arc0) = beta(2) * alpha(sibling arc 1) = 3.
  CHECK(d(tensor_scalar(backward_arc_value(g, r, 0))) == 3.0);
}

TEST_CASE("tensor forward and forward-backward agree on random graphs") {
  std::mt19937_64 rng(307);
  const Semialgebra a = semialgebra_from_semiring(semiring_instance("real"));
  const Semialgebra ext = bc1_extension(a);
  const Semiring tensor_ring = ext.semiring_view();
  std::uniform_real_distribution<double> psi_dist(-1.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    const Graph g = oracle::random_dag(rng);
    const auto xi0 = oracle::random_xi0(rng, g);
    std::map<int, TensorValue> xi;
    std::map<int, Value> tensor_xi;
    for (const auto& [v, w] : xi0) {
      const double psi = psi_dist(rng);
      const TensorValue val = tensor_add(ext.basis(0, w), ext.basis(1, w * psi));
      xi[v] = val;
      tensor_xi[v] = val;
    }
    const BackwardResult fb = forward_backward(g, a, xi);
    const ForwardResult direct = forward(g, tensor_ring, tensor_xi);
    CHECK(tensor_eq(fb.combined, std::any_cast<TensorValue>(direct.sink_sum)));
    // The zeroth projection of the tensor run is the plain forward run.
    for (const auto& [e, v] : direct.values) {
      const TensorValue p0 = project0(std::any_cast<TensorValue>(v));
      CHECK(tensor_eq(p0, std::any_cast<TensorValue>(fb.alpha0.values.at(e))));
    }
  }
}

TEST_CASE("the backward invariant is constant across every cutset") {
  std::mt19937_64 rng(308);
  const Semialgebra a = semialgebra_from_semiring(semiring_instance("real"));
  const Semialgebra ext = bc1_extension(a);
  const Semiring tensor_ring = ext.semiring_view();
  std::uniform_real_distribution<double> psi_dist(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const Graph g = oracle::random_dag(rng);
    const auto xi0 = oracle::random_xi0(rng, g);
    std::map<int, TensorValue> xi;
    std::map<int, Value> tensor_xi;
    for (const auto& [v, w] : xi0) {
      const double psi = psi_dist(rng);
      const TensorValue val = tensor_add(ext.basis(0, w), ext.basis(1, w * psi));
      xi[v] = val;
      tensor_xi[v] = val;
    }
    const BackwardResult fb = forward_backward(g, a, xi);
    const ForwardResult tensor_run = forward(g, tensor_ring, tensor_xi);

    auto beta_of = [&](const Element& e) -> TensorValue {
      return e.kind == ElementKind::NODE ? fb.beta.at(e.id)
                                         : backward_arc_value(g, fb, e.id);
    };
    auto invariant_at = [&](const std::vector<Element>& cutset) -> double {
      TensorValue acc = a.zero();
      for (const Element& e : cutset) {
        const TensorValue alpha = std::any_cast<TensorValue>(tensor_run.values.at(e));
        acc = tensor_add(acc, tensor_mul(project1(alpha), beta_of(e)));
      }
      return d(tensor_scalar(acc));
    };

    std::vector<Element> start;
    for (int v : g.sources()) start.push_back(node_elem(v));
    CutsetWalker walker(g, Direction::FORWARD, start);
    const double reference = invariant_at(walker.cutset());
    CHECK(oracle::rel_diff(reference, d(tensor_dense(fb.combined)[1])) < 1e-12);
    while (!walker.at_terminal()) {
      walker.step();
      CHECK(oracle::rel_diff(invariant_at(walker.cutset()), reference) < 1e-12);
    }
  }
}

TEST_CASE("forward-backward validates sources and policies") {
  const Graph g = join_graph();
  const Semialgebra a = semialgebra_from_semiring(semiring_instance("real"));
  const Semialgebra ext = bc1_extension(a);
  std::map<int, TensorValue> missing{{0, ext.one()}};
  CHECK_THROWS_WITH_AS(forward_backward(g, a, missing),
                       doctest::Contains("SourceValueMissing"), Error);
  // Values from an unrelated algebra are rejected.
  const Semialgebra other = semialgebra_instance("tensor(bc1,bc1)");
  std::map<int, TensorValue> wrong{{0, other.one()}, {1, other.one()}};
  CHECK_THROWS_WITH_AS(forward_backward(g, a, wrong),
                       doctest::Contains("SpecMismatch"), Error);
}

TEST_CASE("forward-backward end results are bit-identical across policies") {
  std::mt19937_64 rng(309);
  const Semialgebra a = semialgebra_from_semiring(semiring_instance("real"));
  const Semialgebra ext = bc1_extension(a);
  for (int t = 0; t < 10; ++t) {
    const Graph g = oracle::random_dag(rng);
    std::map<int, TensorValue> xi;
    for (const auto& [v, w] : oracle::random_xi0(rng, g))
      xi[v] = tensor_add(ext.basis(0, w), ext.basis(1, w * 0.5));
    const BackwardResult ref = forward_backward(g, a, xi, CheckpointPolicy::all());
    for (const CheckpointPolicy& policy :
         {CheckpointPolicy::nodes_only(), CheckpointPolicy::cutsets(2),
          CheckpointPolicy::cutsets(4)}) {
      const BackwardResult run = forward_backward(g, a, xi, policy);
      const auto lhs = tensor_dense(run.combined), rhs = tensor_dense(ref.combined);
      for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(d(lhs[i]) == d(rhs[i]));
      for (const auto& [v, beta] : ref.beta) {
        const auto l = tensor_dense(run.beta.at(v)), r = tensor_dense(beta);
        for (std::size_t i = 0; i < l.size(); ++i) CHECK(d(l[i]) == d(r[i]));
      }
    }
  }
}

}  // TEST_SUITE
