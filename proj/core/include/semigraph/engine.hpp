#pragma once

// The two core passes. forward() walks antichain cutsets from sources to
// sinks carrying one frontier of values; what it retains afterwards is the
// checkpoint policy's business, and checkpointed_replay() recovers any
// dropped value by re-walking from the nearest stored cutset (bit-identical
// arithmetic, same schedule). forward_backward() runs the dual pass and
// assembles the invariant that ties sink-side totals to source-side
// sensitivities.

#include <map>
#include <vector>

#include "semigraph/cutset.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/hom.hpp"
#include "semigraph/natpoly.hpp"
#include "semigraph/semialgebra.hpp"
#include "semigraph/semiring.hpp"

namespace semigraph {

struct CheckpointPolicy {
  enum class Mode { ALL_ELEMENTS, NODES_ONLY, CUTSETS };
  Mode mode = Mode::ALL_ELEMENTS;
  int stride = 1;  // CUTSETS: keep every stride-th visited cutset

  static CheckpointPolicy all() { return {Mode::ALL_ELEMENTS, 1}; }
  static CheckpointPolicy nodes_only() { return {Mode::NODES_ONLY, 1}; }
  static CheckpointPolicy cutsets(int k) { return {Mode::CUTSETS, k}; }
};

struct ForwardResult {
  Semiring semiring;
  CheckpointPolicy policy;
  // Retained values per policy: every element for ALL_ELEMENTS, every node
  // for NODES_ONLY, the union of stored cutsets for CUTSETS.
  std::map<Element, Value> values;
  // Stored cutsets in visit order (CUTSETS mode; always includes the
  // source cutset). Empty for the other modes.
  std::vector<std::vector<Element>> checkpoints;
  Value sink_sum;
};

// Sources take xi, ADD nodes sum their in-arc values, MUL nodes multiply
// them, arcs copy their tails; in-arc folds run in arc-id order and the
// sink sum in node-id order, so results are reproducible to the bit.
// Throws Error("SourceValueMissing") when xi's key set is not exactly the
// source set and Error("SemiringMismatch") when a value is not an s-value.
ForwardResult forward(const Graph& g, const Semiring& s,
                      const std::map<int, Value>& xi,
                      const CheckpointPolicy& policy = CheckpointPolicy::all());

// Forward over natpoly(#sources) with the i-th source (ascending node id)
// mapped to indeterminate x_i. Substituting concrete values into the
// resulting polynomials reproduces any concrete forward run.
ForwardResult free_forward(const Graph& g,
                           const CheckpointPolicy& policy = CheckpointPolicy::all());

// forward() over hom's target semiring with xi = hom(phi). phi is keyed by
// source node id.
ForwardResult parametrized_forward(const Graph& g, const MonoidHom& hom,
                                   const std::map<int, double>& phi,
                                   const CheckpointPolicy& policy = CheckpointPolicy::all());

// The exact alpha value at `element`, recomputed if necessary from the
// nearest stored cutset at or below it. Throws
// Error("InsufficientCheckpoints") when the stored data cannot reach the
// element (possible only if `stored` was pruned by hand).
Value checkpointed_replay(const Graph& g, const CheckpointPolicy& policy,
                          const ForwardResult& stored, const Element& element);

// Coefficient of the final e_0 / e_1 basis element, as a value of the
// remaining tensor prefix (a plain scalar when only a one-dimensional
// factor remains). Throws Error("ShapeMismatch") unless the rightmost
// factor is a two-dimensional binomial-convolution factor.
TensorValue project0(const TensorValue& t);
TensorValue project1(const TensorValue& t);

struct BackwardResult {
  Semialgebra algebra;         // A
  Semialgebra tensor_algebra;  // A (x) bc1
  // Forward pass over A with the zeroth projection of xi (retention per
  // the policy passed to forward_backward).
  ForwardResult alpha0;
  // Backward values on nodes; arc values are derived transiently since
  // beta(e) only needs beta(head(e)) and stored alpha.
  std::map<int, TensorValue> beta;
  // Sum over sinks of alpha (x) e_0 plus sum over sources of
  // P1(xi) * beta (x) e_1; both readings of one invariant quantity.
  TensorValue combined;
};

// xi maps each source to a TensorValue over a (x) bc1. Runs the forward
// pass over A on the zeroth projections, then the backward recursion:
// beta = 1_A on sinks, beta(v) sums its out-arc values, an arc into an ADD
// head copies beta(head), an arc into a MUL head multiplies beta(head) by
// the zeroth-forward values of its sibling in-arcs (prefix times suffix,
// fixed order). Throws Error("SourceValueMissing") and
// Error("NotCancellative").
BackwardResult forward_backward(const Graph& g, const Semialgebra& a,
                                const std::map<int, TensorValue>& xi,
                                const CheckpointPolicy& policy = CheckpointPolicy::all());

// Beta value of one arc, derived from a BackwardResult (transient in the
// result itself).
TensorValue backward_arc_value(const Graph& g, const BackwardResult& r, int arc_id);

}  // namespace semigraph
