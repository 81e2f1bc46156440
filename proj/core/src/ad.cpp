// Differentiation routes. Forward mode seeds the order-1
// binomial-convolution semiring with (value, partial) pairs and needs one
// pass per input; reverse mode runs one forward and one backward pass and
// reads every partial off the source adjoints. Both routes bill their
// real-arithmetic to the same counters, so the cost gap is measurable.

#include "semigraph/ad.hpp"

#include <cmath>

#include "semigraph/bc.hpp"
#include "semigraph/engine.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/semialgebra.hpp"

namespace semigraph {

std::string tag_str(const SourceTag& t) {
  switch (t.kind) {
    case TagKind::CONST: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "const(%.17g)", t.constant);
      return buf;
    }
    case TagKind::INPUT:
      return "x[" + std::to_string(t.input) + "]";
    case TagKind::SIN:
      return "sin(x[" + std::to_string(t.input) + "])";
    case TagKind::COS:
      return "cos(x[" + std::to_string(t.input) + "])";
    case TagKind::EXP:
      return "exp(x[" + std::to_string(t.input) + "])";
    case TagKind::ABS:
      return "abs(x[" + std::to_string(t.input) + "])";
  }
  return "?";
}

int tape_n_inputs(const AdTape& tape) {
  int n = 0;
  for (const auto& [v, tag] : tape.tags)
    if (tag.kind != TagKind::CONST) n = std::max(n, tag.input + 1);
  return n;
}

namespace {

void validate_tape(const AdTape& tape) {
  for (const auto& [v, tag] : tape.tags) {
    if (v < 0 || v >= tape.graph.n_nodes() || !tape.graph.is_source(v))
      throw Error("SourceValueMissing",
                  "tag given for node " + std::to_string(v) +
                      ", which is not a source");
    if (tag.kind != TagKind::CONST &&
        (tag.input < 0 || tag.input >= static_cast<int>(tape.x0.size())))
      throw Error("UnknownElement",
                  "tag on node " + std::to_string(v) +
                      " references input " + std::to_string(tag.input) +
                      " outside the evaluation point");
  }
  for (int v : tape.graph.sources())
    if (!tape.tags.count(v))
      throw Error("SourceValueMissing",
                  "no tag for source node " + std::to_string(v));
}

double tag_value(const SourceTag& tag, const std::vector<double>& x0) {
  switch (tag.kind) {
    case TagKind::CONST:
      return tag.constant;
    case TagKind::INPUT:
      return x0[tag.input];
    case TagKind::SIN:
      return std::sin(x0[tag.input]);
    case TagKind::COS:
      return std::cos(x0[tag.input]);
    case TagKind::EXP:
      return std::exp(x0[tag.input]);
    case TagKind::ABS:
      return std::abs(x0[tag.input]);
  }
  return 0.0;
}

// d(tag)/d(its own input) at x0; the partial toward any other input is 0.
double tag_derivative(const SourceTag& tag, const std::vector<double>& x0) {
  switch (tag.kind) {
    case TagKind::CONST:
      return 0.0;
    case TagKind::INPUT:
      return 1.0;
    case TagKind::SIN:
      return std::cos(x0[tag.input]);
    case TagKind::COS:
      return -std::sin(x0[tag.input]);
    case TagKind::EXP:
      return std::exp(x0[tag.input]);
    case TagKind::ABS:
      if (x0[tag.input] == 0.0)
        throw Error("NonDifferentiableTag",
                    "|x[" + std::to_string(tag.input) +
                        "]| has no derivative at 0");
      return x0[tag.input] > 0.0 ? 1.0 : -1.0;
  }
  return 0.0;
}

}  // namespace

std::pair<double, double> ad_forward_grad(const AdTape& tape, int k,
                                          const CountersPtr& counters) {
  validate_tape(tape);
  if (k < 0 || k >= static_cast<int>(tape.x0.size()))
    throw Error("UnknownElement",
                "input index " + std::to_string(k) +
                    " outside the evaluation point");

  Semiring base = semiring_instance("real");
  if (counters) base = base.instrumented(counters);
  Semiring dual = bc_semiring(base, 1);

  std::map<int, Value> xi;
  for (const auto& [v, tag] : tape.tags) {
    const double value = tag_value(tag, tape.x0);
    const double partial =
        tag.kind != TagKind::CONST && tag.input == k
            ? tag_derivative(tag, tape.x0)
            : 0.0;
    xi[v] = BCValue{{Value(value), Value(partial)}};
  }
  const ForwardResult r = forward(tape.graph, dual, xi);
  const auto& sum = std::any_cast<const BCValue&>(r.sink_sum);
  return {std::any_cast<double>(sum.comps[0]),
          std::any_cast<double>(sum.comps[1])};
}

AdValueGrad ad_reverse_grad(const AdTape& tape, const CountersPtr& counters) {
  validate_tape(tape);

  Semiring base = semiring_instance("real");
  if (counters) base = base.instrumented(counters);
  Semialgebra a = semialgebra_from_semiring(base);
  Semialgebra ext = bc1_extension(a);

  std::map<int, TensorValue> xi;
  for (const auto& [v, tag] : tape.tags)
    xi[v] = TensorValue{ext.impl(), {{0, Value(tag_value(tag, tape.x0))}}};
  const BackwardResult r = forward_backward(tape.graph, a, xi);

  AdValueGrad out;
  out.value = std::any_cast<double>(
      tensor_scalar(std::any_cast<const TensorValue&>(r.alpha0.sink_sum)));
  std::vector<Value> acc(tape.x0.size(), base.zero());
  for (const auto& [v, tag] : tape.tags) {
    if (tag.kind == TagKind::CONST) continue;
    const Value contribution = base.mul(Value(tag_derivative(tag, tape.x0)),
                                        tensor_scalar(r.beta.at(v)));
    acc[tag.input] = base.add(acc[tag.input], contribution);
  }
  out.grad.resize(tape.x0.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out.grad[i] = std::any_cast<double>(acc[i]);
  return out;
}

}  // namespace semigraph
