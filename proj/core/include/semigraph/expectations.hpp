#pragma once

// Expectation pipelines. expectations_fb amortizes one forward and one
// backward pass across any number of additive features (the Baum-Welch
// E-step pattern); expectations_npass is the reference route running one
// first-order tensor pass per feature, kept for value cross-checks and for
// making the cost advantage observable on counters. The second-order
// pipeline runs one pass over real (x) bc1 (x) bc1.

#include <cstdint>
#include <map>
#include <vector>

#include "semigraph/graph.hpp"
#include "semigraph/telemetry.hpp"

namespace semigraph {

// Feature values are keyed by source node id; missing keys mean 0.
using FeatureMap = std::map<int, double>;

struct ExpectationResult {
  double z = 0.0;                 // partition sum, shared by all features
  std::vector<double> numerators;  // one expectation numerator per feature
};

// One real forward pass with xi0 plus one backward pass; numerator j is
// the sum over sources of psi_j * xi0 * beta. Ops are billed to `counters`
// in underlying real add/mul units when given, so the two routes are
// directly comparable; algebra construction is not billed.
ExpectationResult expectations_fb(const Graph& g,
                                  const std::map<int, double>& xi0,
                                  const std::vector<FeatureMap>& features,
                                  const CountersPtr& counters = nullptr);

// Reference route: one forward pass over the first-order tensor semiring
// per feature, with source values xi0 (x) e0 + xi0 psi_j (x) e1. Ops are
// billed in the same underlying real units.
ExpectationResult expectations_npass(const Graph& g,
                                     const std::map<int, double>& xi0,
                                     const std::vector<FeatureMap>& features,
                                     const CountersPtr& counters = nullptr);

// Sum over monomials of mu-weight times (sum of phi over the monomial)
// times (sum of psi over the monomial): one forward pass over
// real (x) bc1 (x) bc1 extracted at 1 (x) e1 (x) e1.
double second_order_expectation(const Graph& g,
                                const std::map<int, double>& mu,
                                const std::map<int, double>& phi,
                                const std::map<int, double>& psi);

}  // namespace semigraph
