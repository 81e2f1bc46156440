#pragma once

// JSON input schemas (graphs, models, tapes, source-value files) and the
// corresponding serializers. Schema violations throw ParseError with a
// JSON-pointer-style location; see docs/formats.md for the grammar of
// every file kind.

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "semigraph/ad.hpp"
#include "semigraph/factor_graph.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/hypergraph.hpp"
#include "semigraph/semiring.hpp"
#include "semigraph/trellis.hpp"
#include "semigraph/zdd.hpp"

namespace semigraph {

// The required "type" field of an input file.
enum class InputKind { GRAPH, TRELLIS, FACTORGRAPH, ZDD, HYPERGRAPH, TAPE };

InputKind input_kind(const nlohmann::json& j);

Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

Trellis trellis_from_json(const nlohmann::json& j);
FactorGraph factor_graph_from_json(const nlohmann::json& j);
Zdd zdd_from_json(const nlohmann::json& j);
Hypergraph hypergraph_from_json(const nlohmann::json& j);
AdTape tape_from_json(const nlohmann::json& j);

// Source values: an object mapping source node ids to entry strings in the
// semiring's parse grammar. Graph files may carry one inline under "xi".
std::map<int, Value> xi_from_json(const nlohmann::json& j, const Semiring& s);

// Feature files for expectation runs: an array of objects mapping source
// node ids to reals.
std::vector<std::map<int, double>> features_from_json(const nlohmann::json& j);

// Fixed-width formatting used for every real number the tools emit:
// 17 significant digits, round-trip exact.
std::string real_str(double x);

}  // namespace semigraph
