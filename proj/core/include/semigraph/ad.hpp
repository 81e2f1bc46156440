#pragma once

// Automatic differentiation over computation graphs. A tape is a graph
// whose sources are tagged with elementary functions of an input vector;
// forward mode drives the order-1 binomial-convolution semiring with
// (value, partial) seeds, reverse mode reuses the forward-backward pass.
// Both expose operation counts in base real-arithmetic units so the cost
// comparison between the two routes is measurable.

#include <map>
#include <string>
#include <vector>

#include "semigraph/graph.hpp"
#include "semigraph/telemetry.hpp"

namespace semigraph {

enum class TagKind { CONST, INPUT, SIN, COS, EXP, ABS };

struct SourceTag {
  TagKind kind = TagKind::CONST;
  double constant = 0.0;  // CONST
  int input = -1;         // index into the evaluation point, other kinds
};

struct AdTape {
  Graph graph;
  std::map<int, SourceTag> tags;  // one per source node
  std::vector<double> x0;         // evaluation point
};

std::string tag_str(const SourceTag& t);

int tape_n_inputs(const AdTape& tape);

struct AdValueGrad {
  double value = 0.0;
  std::vector<double> grad;
};

// Sink-sum value and its partial derivative with respect to input k, by a
// single forward pass over bc(real, 1) seeded with (psi(x0), dpsi/dx_k).
// Real-arithmetic operations inside the pass are billed to `counters` when
// given. Throws Error("NonDifferentiableTag") where a tag has no
// derivative at x0 (|.| at zero) and Error("UnknownElement") for tag or
// input indexes out of range.
std::pair<double, double> ad_forward_grad(const AdTape& tape, int k,
                                          const CountersPtr& counters = nullptr);

// Full gradient by one forward and one backward pass over the reals:
// component k sums tag-derivative times backward value over the sources.
// Same error cases; same counting units.
AdValueGrad ad_reverse_grad(const AdTape& tape,
                            const CountersPtr& counters = nullptr);

}  // namespace semigraph
