// JSON schemas. Every reader threads a location string through its helpers
// so schema violations report where they happened, not just what went
// wrong. Semantic validation (acyclicity, stochastic rows, ...) belongs to
// the adapters; this layer only checks shape and types.

#include "semigraph/io.hpp"

#include <algorithm>
#include <cstdio>

#include "semigraph/errors.hpp"

namespace semigraph {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object())
    throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(where, "missing required field \"" + std::string(key) + "\"");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw ParseError(where, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& where) {
  if (!j.is_number())
    throw ParseError(where, "expected a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string())
    throw ParseError(where, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array())
    throw ParseError(where, "expected an array");
  return j;
}

const json& as_object(const json& j, const std::string& where) {
  if (!j.is_object())
    throw ParseError(where, "expected an object");
  return j;
}

// Object keys that stand for node ids.
int key_to_int(const std::string& key, const std::string& where) {
  if (key.empty() ||
      !std::all_of(key.begin(), key.end(),
                   [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(where, "key \"" + key + "\" is not a node id");
  return std::atoi(key.c_str());
}

std::vector<double> double_row(const json& j, const std::string& where) {
  std::vector<double> out;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i)
    out.push_back(as_double(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<int> int_row(const json& j, const std::string& where) {
  std::vector<int> out;
  for (std::size_t i = 0; i < as_array(j, where).size(); ++i)
    out.push_back(as_int(j[i], where + "/" + std::to_string(i)));
  return out;
}

}  // namespace

InputKind input_kind(const json& j) {
  const std::string type = as_string(require(j, "type", ""), "/type");
  if (type == "graph") return InputKind::GRAPH;
  if (type == "trellis") return InputKind::TRELLIS;
  if (type == "factorgraph") return InputKind::FACTORGRAPH;
  if (type == "zdd") return InputKind::ZDD;
  if (type == "hypergraph") return InputKind::HYPERGRAPH;
  if (type == "tape") return InputKind::TAPE;
  throw ParseError("/type", "unknown input type \"" + type + "\"");
}

namespace {

// Reads an array of {"id": k, ...} objects whose ids must cover 0..n-1
// exactly once; returns the array indices in id order so callers can walk
// entries by id.
std::vector<std::size_t> dense_ids(const json& arr, const std::string& where) {
  std::vector<std::size_t> by_id(arr.size(), arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    const int id = as_int(require(arr[i], "id", at), at + "/id");
    if (id < 0 || id >= static_cast<int>(arr.size()))
      throw ParseError(at + "/id",
                       "id " + std::to_string(id) + " is outside 0.." +
                           std::to_string(arr.size() - 1));
    if (by_id[id] != arr.size())
      throw ParseError(at + "/id", "duplicate id " + std::to_string(id));
    by_id[id] = i;
  }
  return by_id;
}

}  // namespace

Graph graph_from_json(const json& j) {
  const json& jn = as_array(require(j, "nodes", ""), "/nodes");
  const std::vector<std::size_t> node_at = dense_ids(jn, "/nodes");
  std::map<int, OpTag> ops;
  for (int v = 0; v < static_cast<int>(jn.size()); ++v) {
    const std::string where = "/nodes/" + std::to_string(node_at[v]) + "/op";
    const json& op = require(jn[node_at[v]], "op", where);
    if (op.is_null()) continue;
    const std::string name = as_string(op, where);
    if (name == "add")
      ops[v] = OpTag::ADD;
    else if (name == "mul")
      ops[v] = OpTag::MUL;
    else
      throw ParseError(where, "op must be \"add\", \"mul\" or null");
  }

  const json& ja = as_array(require(j, "arcs", ""), "/arcs");
  const std::vector<std::size_t> arc_at = dense_ids(ja, "/arcs");
  std::vector<Arc> arcs;
  for (int e = 0; e < static_cast<int>(ja.size()); ++e) {
    const std::string where = "/arcs/" + std::to_string(arc_at[e]);
    arcs.push_back({as_int(require(ja[arc_at[e]], "tail", where), where + "/tail"),
                    as_int(require(ja[arc_at[e]], "head", where), where + "/head")});
  }

  const std::vector<int> order =
      int_row(require(j, "source_order", ""), "/source_order");
  // An empty order means "no sources", not "default order", so pass it
  // through build_graph's validation explicitly when sources exist. A bad
  // order is a schema problem, unlike the structural errors build_graph
  // raises, so it is converted to ParseError here.
  try {
    Graph g = build_graph(static_cast<int>(jn.size()), arcs, ops, order);
    if (order.empty() && !g.sources().empty())
      throw ParseError("/source_order", "must list every source node");
    return g;
  } catch (const Error& e) {
    if (e.case_name() == "BadSourceOrder")
      throw ParseError("/source_order",
                       std::string(e.what()).substr(e.case_name().size() + 2));
    throw;
  }
}

json graph_to_json(const Graph& g) {
  json nodes = json::array();
  for (int v = 0; v < g.n_nodes(); ++v) {
    json op;  // null on sources
    if (!g.is_source(v)) op = g.op(v) == OpTag::ADD ? "add" : "mul";
    nodes.push_back(json{{"id", v}, {"op", std::move(op)}});
  }
  json arcs = json::array();
  for (int e = 0; e < g.n_arcs(); ++e)
    arcs.push_back(
        json{{"id", e}, {"tail", g.arc(e).tail}, {"head", g.arc(e).head}});
  return json{{"type", "graph"},
              {"nodes", std::move(nodes)},
              {"arcs", std::move(arcs)},
              {"source_order", g.sources()}};
}

Trellis trellis_from_json(const json& j) {
  Trellis t;
  t.initial = double_row(require(j, "initial", ""), "/initial");
  t.num_states = static_cast<int>(t.initial.size());
  const json& tr = as_array(require(j, "transition", ""), "/transition");
  for (std::size_t i = 0; i < tr.size(); ++i)
    t.transition.push_back(
        double_row(tr[i], "/transition/" + std::to_string(i)));
  const json& em = as_array(require(j, "emission", ""), "/emission");
  for (std::size_t i = 0; i < em.size(); ++i)
    t.emission.push_back(double_row(em[i], "/emission/" + std::to_string(i)));
  t.observations = int_row(require(j, "observations", ""), "/observations");
  t.horizon = static_cast<int>(t.observations.size());
  return t;
}

FactorGraph factor_graph_from_json(const json& j) {
  FactorGraph fg;
  fg.domain_sizes = int_row(require(j, "domains", ""), "/domains");
  const json& jf = as_array(require(j, "factors", ""), "/factors");
  for (std::size_t i = 0; i < jf.size(); ++i) {
    const std::string where = "/factors/" + std::to_string(i);
    FactorGraph::Factor f;
    f.scope = int_row(require(jf[i], "scope", where), where + "/scope");
    f.table = double_row(require(jf[i], "table", where), where + "/table");
    fg.factors.push_back(std::move(f));
  }
  if (j.contains("root")) fg.root = as_int(j["root"], "/root");
  return fg;
}

Zdd zdd_from_json(const json& j) {
  Zdd z;
  z.n_vars = as_int(require(j, "vars", ""), "/vars");
  const json& jn = as_array(require(j, "nodes", ""), "/nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string where = "/nodes/" + std::to_string(i);
    z.nodes.push_back({as_int(require(jn[i], "var", where), where + "/var"),
                       as_int(require(jn[i], "lo", where), where + "/lo"),
                       as_int(require(jn[i], "hi", where), where + "/hi")});
  }
  z.root = as_int(require(j, "root", ""), "/root");
  return z;
}

Hypergraph hypergraph_from_json(const json& j) {
  Hypergraph h;
  h.n_vertices = as_int(require(j, "vertices", ""), "/vertices");
  const json& je = as_array(require(j, "edges", ""), "/edges");
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    Hypergraph::Edge e;
    e.head = as_int(require(je[i], "head", where), where + "/head");
    if (je[i].contains("tail")) e.tail = int_row(je[i]["tail"], where + "/tail");
    if (je[i].contains("weight"))
      e.weight = as_double(je[i]["weight"], where + "/weight");
    if (je[i].contains("tag"))
      e.tag = as_string(je[i]["tag"], where + "/tag");
    h.edges.push_back(std::move(e));
  }
  h.target = as_int(require(j, "target", ""), "/target");
  return h;
}

AdTape tape_from_json(const json& j) {
  AdTape tape;
  tape.graph = graph_from_json(as_object(require(j, "graph", ""), "/graph"));
  const json& jt = as_object(require(j, "tags", ""), "/tags");
  for (auto it = jt.begin(); it != jt.end(); ++it) {
    const std::string where = "/tags/" + it.key();
    const int node = key_to_int(it.key(), where);
    const std::string kind =
        as_string(require(it.value(), "kind", where), where + "/kind");
    SourceTag tag;
    if (kind == "const") {
      tag.kind = TagKind::CONST;
      tag.constant =
          as_double(require(it.value(), "value", where), where + "/value");
    } else {
      if (kind == "input")
        tag.kind = TagKind::INPUT;
      else if (kind == "sin")
        tag.kind = TagKind::SIN;
      else if (kind == "cos")
        tag.kind = TagKind::COS;
      else if (kind == "exp")
        tag.kind = TagKind::EXP;
      else if (kind == "abs")
        tag.kind = TagKind::ABS;
      else
        throw ParseError(where + "/kind", "unknown tag kind \"" + kind + "\"");
      tag.input =
          as_int(require(it.value(), "input", where), where + "/input");
    }
    tape.tags.emplace(node, tag);
  }
  tape.x0 = double_row(require(j, "x0", ""), "/x0");
  return tape;
}

std::map<int, Value> xi_from_json(const json& j, const Semiring& s) {
  std::map<int, Value> xi;
  const json& jo = as_object(j, "/xi");
  for (auto it = jo.begin(); it != jo.end(); ++it) {
    const std::string where = "/xi/" + it.key();
    const int node = key_to_int(it.key(), where);
    try {
      xi[node] = s.parse(as_string(it.value(), where));
    } catch (const Error& e) {
      throw ParseError(where, e.what());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  return xi;
}

std::vector<std::map<int, double>> features_from_json(const json& j) {
  std::vector<std::map<int, double>> out;
  const json& ja = as_array(j, "/features");
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string where = "/features/" + std::to_string(i);
    std::map<int, double> f;
    const json& jo = as_object(ja[i], where);
    for (auto it = jo.begin(); it != jo.end(); ++it) {
      const std::string kw = where + "/" + it.key();
      f[key_to_int(it.key(), kw)] = as_double(it.value(), kw);
    }
    out.push_back(std::move(f));
  }
  return out;
}

// real_str is declared here for tool use; the definition lives with the
// semiring instances, which use the same formatting for their str().

}  // namespace semigraph
