// Forward pass, checkpoint replay and the forward-backward pass. All value
// computation funnels through eval_node/apply_forward_step so that a replay
// performs literally the same operations in the same order as the original
// run — that is what makes replayed floats bit-identical.

#include "semigraph/engine.hpp"

#include <cassert>
#include <cstddef>
#include <functional>
#include <utility>

#include "semigraph/errors.hpp"
#include "semigraph/natpoly.hpp"

namespace semigraph {

namespace {

void validate_source_keys(const Graph& g, const std::map<int, Value>& xi) {
  for (const auto& [v, unused] : xi) {
    if (v < 0 || v >= g.n_nodes() || !g.is_source(v))
      throw Error("SourceValueMissing",
                  "value given for node " + std::to_string(v) +
                      ", which is not a source");
  }
  for (int v : g.sources()) {
    if (!xi.count(v))
      throw Error("SourceValueMissing",
                  "no value for source node " + std::to_string(v));
  }
}

// In-arc fold of a non-source node, in arc-id order.
Value eval_node(const Graph& g, const Semiring& s, int v,
                const std::map<Element, Value>& live) {
  const auto& in = g.in_arcs(v);
  assert(!in.empty());
  Value acc = live.at(arc_elem(in[0]));
  const bool is_add = g.op(v) == OpTag::ADD;
  for (std::size_t i = 1; i < in.size(); ++i) {
    const Value& next = live.at(arc_elem(in[i]));
    acc = is_add ? s.add(acc, next) : s.mul(acc, next);
  }
  return acc;
}

// Evaluates d_new from the pre-step frontier, reports each fresh value,
// then drops d_old. `live` is exactly the walker's cutset before and after.
template <typename OnNew>
void apply_forward_step(const Graph& g, const Semiring& s, const CutsetStep& st,
                        std::map<Element, Value>& live, OnNew&& on_new) {
  for (const Element& e : st.d_new) {
    Value val = e.kind == ElementKind::NODE
                    ? eval_node(g, s, e.id, live)
                    : live.at(node_elem(g.arc(e.id).tail));
    on_new(e, val);
    live.emplace(e, std::move(val));
  }
  for (const Element& e : st.d_old) live.erase(e);
}

Value fold_sink_sum(const Graph& g, const Semiring& s,
                    const std::map<Element, Value>& live) {
  const auto& sinks = g.sinks();
  if (sinks.empty()) return s.zero();
  Value acc = live.at(node_elem(sinks[0]));
  for (std::size_t i = 1; i < sinks.size(); ++i)
    acc = s.add(acc, live.at(node_elem(sinks[i])));
  return acc;
}

}  // namespace

ForwardResult forward(const Graph& g, const Semiring& s,
                      const std::map<int, Value>& xi,
                      const CheckpointPolicy& policy) {
  validate_source_keys(g, xi);
  for (const auto& [v, val] : xi) {
    if (!s.accepts(val))
      throw Error("SemiringMismatch", "value for source node " +
                                          std::to_string(v) +
                                          " is not a value of '" + s.name() + "'");
  }
  if (policy.mode == CheckpointPolicy::Mode::CUTSETS && policy.stride < 1)
    throw Error("BadStride", "cutset stride must be at least 1");

  ForwardResult r{s, policy, {}, {}, s.zero()};

  std::vector<Element> start;
  std::map<Element, Value> live;
  for (int v : g.sources()) {
    start.push_back(node_elem(v));
    live.emplace(node_elem(v), xi.at(v));
  }

  const bool keep_cutsets = policy.mode == CheckpointPolicy::Mode::CUTSETS;
  auto retain = [&](const Element& e, const Value& val) {
    if (policy.mode == CheckpointPolicy::Mode::ALL_ELEMENTS ||
        (policy.mode == CheckpointPolicy::Mode::NODES_ONLY &&
         e.kind == ElementKind::NODE))
      r.values[e] = val;
  };
  for (const auto& [e, val] : live) retain(e, val);

  CutsetWalker walker(g, Direction::FORWARD, start);
  auto snapshot = [&]() {
    r.checkpoints.push_back(walker.cutset());
    for (const Element& e : walker.cutset()) r.values[e] = live.at(e);
  };
  if (keep_cutsets) snapshot();  // the source cutset is always stored

  long long visited = 0;
  while (!walker.at_terminal()) {
    CutsetStep st = walker.step();
    apply_forward_step(g, s, st, live, retain);
    ++visited;
    if (keep_cutsets && visited % policy.stride == 0) snapshot();
  }

  r.sink_sum = fold_sink_sum(g, s, live);
  return r;
}

ForwardResult free_forward(const Graph& g, const CheckpointPolicy& policy) {
  const auto& sources = g.sources();
  const int n = static_cast<int>(sources.size());
  Semiring s = semiring_instance("natpoly(" + std::to_string(n) + ")");
  std::map<int, Value> xi;
  for (int i = 0; i < n; ++i) xi[sources[i]] = Value(natpoly_var(n, i));
  return forward(g, s, xi, policy);
}

ForwardResult parametrized_forward(const Graph& g, const MonoidHom& hom,
                                   const std::map<int, double>& phi,
                                   const CheckpointPolicy& policy) {
  validate_source_keys(g, std::map<int, Value>(phi.begin(), phi.end()));
  std::map<int, Value> xi;
  for (const auto& [v, p] : phi) xi[v] = hom.apply(p);
  return forward(g, hom.target, xi, policy);
}

Value checkpointed_replay(const Graph& g, const CheckpointPolicy& policy,
                          const ForwardResult& stored, const Element& element) {
  if (!g.contains(element))
    throw Error("UnknownElement", "no such element " + element_str(element));

  auto hit = stored.values.find(element);
  if (hit != stored.values.end()) return hit->second;

  switch (policy.mode) {
    case CheckpointPolicy::Mode::ALL_ELEMENTS:
      break;  // every value should have been retained
    case CheckpointPolicy::Mode::NODES_ONLY:
      if (element.kind == ElementKind::ARC) {
        auto tail = stored.values.find(node_elem(g.arc(element.id).tail));
        if (tail != stored.values.end()) return tail->second;
      }
      break;
    case CheckpointPolicy::Mode::CUTSETS: {
      const Semiring& s = stored.semiring;
      // Latest stored cutset that does not already lie beyond the element.
      // (Membership itself was handled by the direct lookup above, so a
      // usable cutset is one with the element not strictly behind it.)
      for (auto ci = stored.checkpoints.rbegin();
           ci != stored.checkpoints.rend(); ++ci) {
        const std::vector<Element>& c = *ci;
        bool behind = false;
        for (const Element& e : c) {
          if (poset_leq(g, element, e)) {
            behind = true;
            break;
          }
        }
        if (behind) continue;

        std::map<Element, Value> live;
        for (const Element& e : c) {
          auto vi = stored.values.find(e);
          if (vi == stored.values.end())
            throw Error("InsufficientCheckpoints",
                        "stored cutset is missing the value of " +
                            element_str(e));
          live.emplace(e, vi->second);
        }
        CutsetWalker walker(g, Direction::FORWARD, c);
        while (!walker.at_terminal()) {
          CutsetStep st = walker.step();
          bool found = false;
          apply_forward_step(g, s, st, live, [&](const Element& e, const Value&) {
            found |= e == element;
          });
          if (found) return live.at(element);
        }
        break;  // walked to the sinks without meeting it; nothing can
      }
      break;
    }
  }
  throw Error("InsufficientCheckpoints",
              "stored data cannot reach element " + element_str(element));
}

namespace {

bool projectable(const SemialgebraImpl& impl) {
  return !impl.factors.empty() && impl.factors.back().dim == 2 &&
         impl.prefix != nullptr;
}

TensorValue project_bit(const TensorValue& t, int bit) {
  if (!t.spec || !projectable(*t.spec))
    throw Error("ShapeMismatch",
                "projection needs a rightmost first-order "
                "binomial-convolution factor");
  TensorValue r{t.spec->prefix, {}};
  for (const auto& [w, c] : t.coeffs)
    if (w % 2 == bit) r.coeffs.emplace(w / 2, c);
  return r;
}

}  // namespace

TensorValue project0(const TensorValue& t) { return project_bit(t, 0); }
TensorValue project1(const TensorValue& t) { return project_bit(t, 1); }

namespace {

// Products of the alpha values of all in-arcs but one, for every position:
// ex[i] = (alpha(in[0]) ... alpha(in[i-1])) * (alpha(in[i+1]) ... ), with the
// empty side elided rather than multiplied by the unit so that op counts
// stay at the textbook cost. Association order is fixed; together with the
// fixed schedule this keeps beta values bit-reproducible.
std::vector<TensorValue> exclusive_products(
    const Semialgebra& a, const std::vector<int>& in,
    const std::function<TensorValue(int)>& alpha_arc) {
  const int d = static_cast<int>(in.size());
  std::vector<TensorValue> ex(d, a.one());
  if (d < 2) return ex;
  std::vector<TensorValue> pre(d, a.one()), suf(d, a.one());
  pre[1] = alpha_arc(in[0]);
  for (int i = 2; i < d; ++i)
    pre[i] = tensor_mul(pre[i - 1], alpha_arc(in[i - 1]));
  suf[d - 2] = alpha_arc(in[d - 1]);
  for (int i = d - 3; i >= 0; --i)
    suf[i] = tensor_mul(alpha_arc(in[i + 1]), suf[i + 1]);
  for (int i = 0; i < d; ++i) {
    if (i == 0)
      ex[i] = suf[0];
    else if (i == d - 1)
      ex[i] = pre[d - 1];
    else
      ex[i] = tensor_mul(pre[i], suf[i]);
  }
  return ex;
}

int in_arc_position(const std::vector<int>& in, int arc_id) {
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i] == arc_id) return static_cast<int>(i);
  return -1;
}

}  // namespace

BackwardResult forward_backward(const Graph& g, const Semialgebra& a,
                                const std::map<int, TensorValue>& xi,
                                const CheckpointPolicy& policy) {
  if (!a.scalar().cancellative())
    throw Error("NotCancellative",
                "the backward pass needs a cancellative scalar semiring");
  {
    std::map<int, Value> keys;
    for (const auto& [v, tv] : xi) keys.emplace(v, Value());
    validate_source_keys(g, keys);
  }

  std::shared_ptr<const SemialgebraImpl> tspec;
  for (const auto& [v, tv] : xi) {
    if (!tv.spec)
      throw Error("SpecMismatch", "source value for node " + std::to_string(v) +
                                      " carries no algebra spec");
    if (!tspec)
      tspec = tv.spec;
    else if (tspec != tv.spec)
      throw Error("SpecMismatch", "source values live in different algebras");
  }
  if (!tspec) tspec = bc1_extension(a).impl();  // graph without sources
  if (tspec->prefix != a.impl())
    throw Error("SpecMismatch",
                "source values must live in the first-order extension of '" +
                    a.name() + "', got '" + tspec->name + "'");
  Semialgebra tensor_algebra{tspec};

  Semiring sview = a.semiring_view();
  std::map<int, Value> xi0;
  for (const auto& [v, tv] : xi) xi0[v] = Value(project0(tv));
  ForwardResult alpha0 = forward(g, sview, xi0, policy);

  // Alpha fetches go through the policy; replays are memoized per element.
  std::map<Element, TensorValue> alpha_cache;
  auto alpha_at = [&](const Element& e) -> const TensorValue& {
    auto it = alpha_cache.find(e);
    if (it == alpha_cache.end()) {
      Value v = checkpointed_replay(g, policy, alpha0, e);
      it = alpha_cache.emplace(e, std::any_cast<TensorValue>(std::move(v))).first;
    }
    return it->second;
  };
  auto alpha_arc = [&](int arc_id) { return alpha_at(arc_elem(arc_id)); };

  std::map<int, TensorValue> beta;
  std::map<int, std::vector<TensorValue>> excl_by_head;
  auto beta_arc = [&](int arc_id) -> TensorValue {
    const int h = g.arc(arc_id).head;
    const TensorValue& bh = beta.at(h);
    if (g.op(h) == OpTag::ADD) return bh;
    const auto& in = g.in_arcs(h);
    if (in.size() == 1) return bh;
    auto it = excl_by_head.find(h);
    if (it == excl_by_head.end())
      it = excl_by_head.emplace(h, exclusive_products(a, in, alpha_arc)).first;
    return tensor_mul(bh, it->second[in_arc_position(in, arc_id)]);
  };

  const auto& sched = g.schedule();
  for (auto it = sched.rbegin(); it != sched.rend(); ++it) {
    if (it->kind != ElementKind::NODE) continue;
    const int v = it->id;
    if (g.is_sink(v)) {
      beta.emplace(v, a.one());
      continue;
    }
    const auto& out = g.out_arcs(v);
    TensorValue acc = beta_arc(out[0]);
    for (std::size_t i = 1; i < out.size(); ++i)
      acc = tensor_add(acc, beta_arc(out[i]));
    beta.emplace(v, std::move(acc));
  }

  // Both readings of the invariant quantity, assembled in node-id order.
  auto embed = [&](const TensorValue& t, int bit) {
    TensorValue r{tspec, {}};
    for (const auto& [w, c] : t.coeffs) r.coeffs.emplace(w * 2 + bit, c);
    return r;
  };
  TensorValue combined{tspec, {}};
  for (int v : g.sinks())
    combined = tensor_add(combined, embed(alpha_at(node_elem(v)), 0));
  for (int v : g.sources())
    combined = tensor_add(
        combined, embed(tensor_mul(project1(xi.at(v)), beta.at(v)), 1));

  return BackwardResult{a, tensor_algebra, std::move(alpha0), std::move(beta),
                        std::move(combined)};
}

TensorValue backward_arc_value(const Graph& g, const BackwardResult& r,
                               int arc_id) {
  if (arc_id < 0 || arc_id >= g.n_arcs())
    throw Error("UnknownElement", "no such arc " + std::to_string(arc_id));
  const int h = g.arc(arc_id).head;
  const TensorValue& bh = r.beta.at(h);
  if (g.op(h) == OpTag::ADD) return bh;
  const auto& in = g.in_arcs(h);
  if (in.size() == 1) return bh;
  auto alpha_arc = [&](int id) {
    return std::any_cast<TensorValue>(
        checkpointed_replay(g, r.alpha0.policy, r.alpha0, arc_elem(id)));
  };
  auto ex = exclusive_products(r.algebra, in, alpha_arc);
  return tensor_mul(bh, ex[in_arc_position(in, arc_id)]);
}

}  // namespace semigraph
