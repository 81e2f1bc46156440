// Expectation pipelines. Both routes compute, for each additive feature
// psi_j, the quantity sum over sink monomials of weight times the
// monomial's accumulated psi_j — the Baum-Welch E-step numerator — but the
// forward-backward route pays for the backward pass once and reuses it for
// every feature, while the reference route pays one first-order tensor pass
// per feature. Counters are reset after algebra construction so they report
// exactly the passes.

#include "semigraph/expectations.hpp"

#include "semigraph/engine.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/semialgebra.hpp"

namespace semigraph {

namespace {

void validate_feature_keys(const Graph& g, const std::vector<FeatureMap>& fs) {
  for (std::size_t j = 0; j < fs.size(); ++j)
    for (const auto& [v, unused] : fs[j])
      if (v < 0 || v >= g.n_nodes() || !g.is_source(v))
        throw Error("UnknownElement",
                    "feature " + std::to_string(j) + " references node " +
                        std::to_string(v) + ", which is not a source");
}

}  // namespace

ExpectationResult expectations_fb(const Graph& g,
                                  const std::map<int, double>& xi0,
                                  const std::vector<FeatureMap>& features,
                                  const CountersPtr& counters) {
  validate_feature_keys(g, features);
  Semiring base = semiring_instance("real");
  if (counters) base = base.instrumented(counters);
  Semialgebra a = semialgebra_from_semiring(base);
  Semialgebra ext = bc1_extension(a);
  if (counters) counters->reset();

  std::map<int, TensorValue> xi;
  for (const auto& [v, x] : xi0)
    xi[v] = TensorValue{ext.impl(), {{0, Value(x)}}};
  const BackwardResult r = forward_backward(g, a, xi);

  ExpectationResult out;
  out.z = std::any_cast<double>(
      tensor_scalar(std::any_cast<const TensorValue&>(r.alpha0.sink_sum)));
  out.numerators.reserve(features.size());
  for (const auto& psi : features) {
    Value acc = base.zero();
    for (const auto& [v, coeff] : psi) {
      const Value term = base.mul(base.mul(Value(coeff), Value(xi0.at(v))),
                                  tensor_scalar(r.beta.at(v)));
      acc = base.add(acc, term);
    }
    out.numerators.push_back(std::any_cast<double>(acc));
  }
  return out;
}

ExpectationResult expectations_npass(const Graph& g,
                                     const std::map<int, double>& xi0,
                                     const std::vector<FeatureMap>& features,
                                     const CountersPtr& counters) {
  validate_feature_keys(g, features);
  Semiring base = semiring_instance("real");
  if (counters) base = base.instrumented(counters);
  Semialgebra ext = bc1_extension(semialgebra_from_semiring(base));
  Semiring driving = ext.semiring_view();
  if (counters) counters->reset();

  ExpectationResult out;
  out.numerators.reserve(features.size());
  for (std::size_t j = 0; j < features.size(); ++j) {
    const FeatureMap& psi = features[j];
    std::map<int, Value> xi;
    for (const auto& [v, x] : xi0) {
      TensorValue t{ext.impl(), {{0, Value(x)}}};
      auto pit = psi.find(v);
      if (pit != psi.end())
        t.coeffs.emplace(1, base.mul(Value(x), Value(pit->second)));
      xi[v] = std::move(t);
    }
    const ForwardResult r = forward(g, driving, xi);
    const auto& sum = std::any_cast<const TensorValue&>(r.sink_sum);
    if (j == 0)
      out.z = std::any_cast<double>(
          tensor_scalar(project0(sum)));
    auto first = project1(sum).coeffs;
    out.numerators.push_back(
        first.count(0) ? std::any_cast<double>(first.at(0)) : 0.0);
  }
  return out;
}

double second_order_expectation(const Graph& g, const std::map<int, double>& mu,
                                const std::map<int, double>& phi,
                                const std::map<int, double>& psi) {
  validate_feature_keys(g, {phi, psi});
  Semialgebra t2 = semialgebra_instance("tensor(real,bc1,bc1)");

  // Seed mu * (1 + phi e1)(1 + psi e1'); flat indexes over dims (1,2,2) put
  // the phi marker at 2, the psi marker at 1 and their product at 3.
  std::map<int, Value> xi;
  for (const auto& [v, m] : mu) {
    TensorValue t{t2.impl(), {}};
    t.coeffs[0] = m;
    auto pit = phi.find(v);
    auto qit = psi.find(v);
    if (pit != phi.end()) t.coeffs[2] = m * pit->second;
    if (qit != psi.end()) t.coeffs[1] = m * qit->second;
    if (pit != phi.end() && qit != psi.end())
      t.coeffs[3] = m * pit->second * qit->second;
    xi[v] = std::move(t);
  }
  const ForwardResult r = forward(g, t2.semiring_view(), xi);
  const auto& sum = std::any_cast<const TensorValue&>(r.sink_sum);
  auto it = sum.coeffs.find(3);
  return it == sum.coeffs.end() ? 0.0 : std::any_cast<double>(it->second);
}

}  // namespace semigraph
