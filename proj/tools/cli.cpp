// One subcommand per pipeline. Every number the tool prints goes through
// the owning semiring's str() (reals: 17 significant digits), output
// documents are built in insertion order, and TSV is the flattened
// JSON-pointer view of the same document, so runs are byte-reproducible.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "semigraph/ad.hpp"
#include "semigraph/engine.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/expectations.hpp"
#include "semigraph/factor_graph.hpp"
#include "semigraph/graph.hpp"
#include "semigraph/hypergraph.hpp"
#include "semigraph/io.hpp"
#include "semigraph/laws.hpp"
#include "semigraph/natpoly.hpp"
#include "semigraph/semialgebra.hpp"
#include "semigraph/semiring.hpp"
#include "semigraph/telemetry.hpp"
#include "semigraph/trellis.hpp"
#include "semigraph/zdd.hpp"

namespace semigraph {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string input;
  std::string semiring = "real";
  std::string checkpoint = "all";
  std::string features_path;
  std::string point;
  std::string format = "json";
  double tol = 1e-9;  // cross-check tolerance (expect)
  bool telemetry = false;
  int cases = 1000;  // validate
};

CheckpointPolicy checkpoint_policy(const std::string& text) {
  if (text == "all") return CheckpointPolicy::all();
  if (text == "nodes") return CheckpointPolicy::nodes_only();
  if (text.rfind("cutsets:", 0) == 0) {
    const std::string k = text.substr(8);
    if (!k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
          return c >= '0' && c <= '9';
        }))
      return CheckpointPolicy::cutsets(std::stoi(k));
  }
  throw ParseError("--checkpoint",
                   "expected all, nodes or cutsets:K, got \"" + text + "\"");
}

json load_json(const std::string& path, const char* what) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in)
      throw ParseError(what, "cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what, e.what());
  }
}

// One loaded input file, reduced to what the pipelines share. Model kinds
// come with real weights; graph files instead carry per-semiring entry
// strings under "xi", so concrete source values are built on demand.
struct Input {
  InputKind kind = InputKind::GRAPH;
  json doc;
  Graph graph;
  std::map<int, double> weights;    // model weights (empty for graph/tape)
  std::vector<std::string> legend;  // by position in graph.sources()
  std::optional<Zdd> zdd;
  std::optional<ZddCg> zdd_cg;
  std::optional<AdTape> tape;
};

template <typename LegendMap, typename Str>
std::vector<std::string> legend_strings(const Graph& g, const LegendMap& m,
                                        Str str) {
  std::vector<std::string> out;
  out.reserve(g.sources().size());
  for (int v : g.sources()) out.push_back(str(m.at(v)));
  return out;
}

Input load_input(const RunConfig& cfg) {
  Input in;
  in.doc = load_json(cfg.input, "input");
  in.kind = input_kind(in.doc);
  switch (in.kind) {
    case InputKind::GRAPH: {
      in.graph = graph_from_json(in.doc);
      for (int v : in.graph.sources())
        in.legend.push_back("node " + std::to_string(v));
      break;
    }
    case InputKind::TRELLIS: {
      TrellisCg cg = trellis_to_cg(trellis_from_json(in.doc));
      in.graph = std::move(cg.graph);
      in.weights = std::move(cg.xi);
      in.legend = legend_strings(in.graph, cg.legend, trellis_source_str);
      break;
    }
    case InputKind::FACTORGRAPH: {
      FactorGraphCg cg = factor_graph_to_cg(factor_graph_from_json(in.doc));
      in.graph = std::move(cg.graph);
      in.weights = std::move(cg.xi);
      in.legend = legend_strings(in.graph, cg.legend, factor_graph_source_str);
      break;
    }
    case InputKind::ZDD: {
      in.zdd = zdd_from_json(in.doc);
      in.zdd_cg = zdd_to_cg(*in.zdd);
      in.graph = in.zdd_cg->graph;
      in.legend = legend_strings(in.graph, in.zdd_cg->legend, zdd_source_str);
      break;
    }
    case InputKind::HYPERGRAPH: {
      Hypergraph h = hypergraph_from_json(in.doc);
      HypergraphCg cg = hypergraph_to_cg(h);
      in.graph = std::move(cg.graph);
      in.weights = std::move(cg.xi);
      in.legend = legend_strings(
          in.graph, cg.legend,
          [&h](const HypergraphSource& s) { return hypergraph_source_str(h, s); });
      break;
    }
    case InputKind::TAPE: {
      in.tape = tape_from_json(in.doc);
      in.graph = in.tape->graph;
      break;
    }
  }
  if (in.kind == InputKind::TAPE && cfg.command != "grad")
    throw ParseError("input", "tape inputs drive the grad command only");
  if (in.kind != InputKind::TAPE && cfg.command == "grad")
    throw ParseError("input", "grad needs a tape input");
  return in;
}

// Model weights are linear-domain reals; driving another semiring needs an
// embedding that turns real products into that semiring's products.
Value embed_real(const Semiring& s, double w) {
  const std::string& n = s.name();
  if (n == "real") return w;
  if (n == "rational") return mpq_class(w);  // exact binary-to-rational
  if (n == "logreal" || n == "maxplus") {
    if (w < 0)
      throw Error("SemiringMismatch", "negative weight " + real_str(w) +
                                          " has no log-domain image in " + n);
    return std::log(w);  // log 0 = -inf, the additive identity
  }
  if (n == "complex2") return s.parse(real_str(w) + ",0");
  throw Error("SemiringMismatch",
              "model weights cannot drive semiring \"" + n +
                  "\"; use a graph file with explicit source entries");
}

std::vector<Value> zdd_weight_values(const Input& in, const Semiring& s) {
  if (!in.doc.contains("weights"))
    return std::vector<Value>(in.zdd->n_vars, s.one());
  if (!s.can_parse())
    throw ParseError("/weights", "semiring " + s.name() +
                                     " has no textual entry syntax");
  const json& arr = in.doc["weights"];
  if (!arr.is_array())
    throw ParseError("/weights", "expected an array of entry strings");
  std::vector<Value> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "/weights/" + std::to_string(i);
    if (!arr[i].is_string()) throw ParseError(where, "expected a string");
    try {
      out.push_back(s.parse(arr[i].get<std::string>()));
    } catch (const Error& e) {
      throw ParseError(where, e.what());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  return out;
}

// Concrete source values for a weighted pass over s.
std::map<int, Value> forward_xi(const Input& in, const Semiring& s) {
  if (in.kind == InputKind::GRAPH) {
    if (!in.doc.contains("xi"))
      throw ParseError(
          "/xi", "graph inputs need a \"xi\" object with one entry per source");
    return xi_from_json(in.doc["xi"], s);
  }
  if (in.kind == InputKind::ZDD)
    return zdd_xi(*in.zdd_cg, s, zdd_weight_values(in, s));
  std::map<int, Value> xi;
  for (const auto& [v, w] : in.weights) xi[v] = embed_real(s, w);
  return xi;
}

// Real source values for the expectation pipelines.
std::map<int, double> real_xi(const Input& in) {
  const Semiring real = semiring_instance("real");
  std::map<int, double> xi;
  for (const auto& [v, val] : forward_xi(in, real))
    xi[v] = std::any_cast<double>(val);
  return xi;
}

ojson counters_json(const CountersPtr& c) {
  return ojson{{"adds", c->adds.load()}, {"muls", c->muls.load()}};
}

std::string leaf_str(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const RunConfig& cfg, const ojson& doc, std::ostream& out) {
  if (cfg.format == "tsv") {
    const ojson flat = doc.flatten();
    for (const auto& [path, leaf] : flat.items())
      out << path.substr(1) << '\t' << leaf_str(leaf) << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
}

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

int cmd_forward(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  Semiring s = semiring_instance(cfg.semiring);
  CountersPtr counters;
  if (cfg.telemetry) {
    counters = make_counters();
    s = s.instrumented(counters);
  }
  const std::map<int, Value> xi = forward_xi(in, s);
  const ForwardResult r =
      forward(in.graph, s, xi, checkpoint_policy(cfg.checkpoint));

  ojson doc;
  doc["command"] = "forward";
  doc["semiring"] = s.name();
  doc["checkpoint"] = cfg.checkpoint;
  doc["sink_sum"] = s.str(r.sink_sum);
  if (r.sink_sum.type() == typeid(TensorValue)) {
    const auto& t = std::any_cast<const TensorValue&>(r.sink_sum);
    const Semialgebra alg(t.spec);
    ojson coeffs = ojson::array();
    for (const Value& v : tensor_dense(t)) coeffs.push_back(alg.scalar().str(v));
    doc["coeffs"] = std::move(coeffs);
  }
  if (counters) doc["telemetry"] = counters_json(counters);
  emit(cfg, doc, out);
  return 0;
}

int cmd_free_forward(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  const CheckpointPolicy policy = checkpoint_policy(cfg.checkpoint);
  CountersPtr counters = cfg.telemetry ? make_counters() : nullptr;

  ojson doc;
  doc["command"] = "free-forward";
  if (in.kind == InputKind::ZDD) {
    // The family polynomial: indeterminates are diagram variables, with
    // the constant-one source substituted away.
    doc["n_indeterminates"] = in.zdd->n_vars;
    doc["polynomial"] = natpoly_str(zdd_family_polynomial(*in.zdd));
    ojson legend = ojson::array();
    for (int i = 0; i < in.zdd->n_vars; ++i)
      legend.push_back("variable " + std::to_string(i));
    doc["legend"] = std::move(legend);
    if (counters) {
      // Bill the structural pass over the diagram's graph; the renumbered
      // polynomial above costs the same operations.
      const int k = static_cast<int>(in.graph.sources().size());
      Semiring np = semiring_instance("natpoly(" + std::to_string(k) + ")")
                        .instrumented(counters);
      std::map<int, Value> xi;
      for (int i = 0; i < k; ++i)
        xi[in.graph.sources()[i]] = natpoly_var(k, i);
      forward(in.graph, np, xi, policy);
    }
  } else {
    const int k = static_cast<int>(in.graph.sources().size());
    Semiring np = semiring_instance("natpoly(" + std::to_string(k) + ")");
    if (counters) np = np.instrumented(counters);
    std::map<int, Value> xi;
    for (int i = 0; i < k; ++i) xi[in.graph.sources()[i]] = natpoly_var(k, i);
    const ForwardResult r = forward(in.graph, np, xi, policy);
    doc["n_indeterminates"] = k;
    doc["polynomial"] = natpoly_str(std::any_cast<const NatPoly&>(r.sink_sum));
    doc["legend"] = in.legend;
  }
  if (counters) doc["telemetry"] = counters_json(counters);
  emit(cfg, doc, out);
  return 0;
}

int cmd_fb(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  Semiring s = semiring_instance(cfg.semiring);
  CountersPtr counters;
  if (cfg.telemetry) {
    counters = make_counters();
    s = s.instrumented(counters);
  }
  const Semialgebra a = semialgebra_from_semiring(s);
  const Semialgebra ext = bc1_extension(a);

  std::map<int, TensorValue> txi;
  if (in.kind == InputKind::GRAPH) {
    if (!in.doc.contains("xi"))
      throw ParseError("/xi",
                       "graph inputs need a \"xi\" object with one entry per "
                       "source; fb entries are pairs \"[p0;p1]\"");
    const Semiring view = ext.semiring_view();
    for (const auto& [v, val] : xi_from_json(in.doc["xi"], view))
      txi[v] = std::any_cast<TensorValue>(val);
  } else {
    // Model weights seed both components: the zeroth drives the ordinary
    // forward pass, the first makes the source's multiplicity observable
    // in the combined output.
    for (const auto& [v, x] : forward_xi(in, s))
      txi[v] = tensor_add(ext.basis(0, x), ext.basis(1, x));
  }

  const BackwardResult r =
      forward_backward(in.graph, a, txi, checkpoint_policy(cfg.checkpoint));

  ojson doc;
  doc["command"] = "fb";
  doc["scalar"] = s.name();
  doc["checkpoint"] = cfg.checkpoint;
  doc["z"] = s.str(
      tensor_scalar(std::any_cast<const TensorValue&>(r.alpha0.sink_sum)));
  ojson beta = ojson::array();
  for (int v = 0; v < in.graph.n_nodes(); ++v)
    beta.push_back(s.str(tensor_scalar(r.beta.at(v))));
  doc["beta"] = std::move(beta);
  ojson combined = ojson::array();
  for (const Value& c : tensor_dense(r.combined)) combined.push_back(s.str(c));
  doc["combined"] = std::move(combined);
  if (counters) doc["telemetry"] = counters_json(counters);
  emit(cfg, doc, out);
  return 0;
}

int cmd_expect(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  if (cfg.features_path.empty())
    throw ParseError("--features", "expect needs --features FILE");
  const std::vector<FeatureMap> features =
      features_from_json(load_json(cfg.features_path, "features"));
  const std::map<int, double> xi0 = real_xi(in);

  const CountersPtr c_fb = make_counters();
  const CountersPtr c_np = make_counters();
  const ExpectationResult fb = expectations_fb(in.graph, xi0, features, c_fb);
  const ExpectationResult np =
      expectations_npass(in.graph, xi0, features, c_np);

  double max_diff = rel_diff(fb.z, np.z);
  for (std::size_t j = 0; j < features.size(); ++j)
    max_diff = std::max(max_diff, rel_diff(fb.numerators[j], np.numerators[j]));
  if (!(max_diff <= cfg.tol))
    throw Error("ExpectationMismatch",
                "single-pass and per-feature routes disagree by " +
                    real_str(max_diff) + " (tolerance " + real_str(cfg.tol) +
                    ")");

  ojson doc;
  doc["command"] = "expect";
  doc["n_features"] = features.size();
  doc["z"] = real_str(fb.z);
  ojson numerators = ojson::array();
  ojson expectations = ojson::array();
  for (double n : fb.numerators) {
    numerators.push_back(real_str(n));
    expectations.push_back(real_str(n / fb.z));
  }
  doc["numerators"] = std::move(numerators);
  doc["expectations"] = std::move(expectations);
  doc["npass_max_rel_diff"] = real_str(max_diff);
  if (cfg.telemetry)
    doc["telemetry"] =
        ojson{{"fb", counters_json(c_fb)}, {"npass", counters_json(c_np)}};
  emit(cfg, doc, out);
  return 0;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cur, &used);
    } catch (const std::exception&) {
      throw ParseError("--point", "\"" + cur + "\" is not a number");
    }
    if (used != cur.size())
      throw ParseError("--point", "\"" + cur + "\" is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("--point", "expected x1,...,xm");
  return out;
}

int cmd_grad(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  AdTape tape = *in.tape;
  if (!cfg.point.empty()) tape.x0 = parse_point(cfg.point);

  const CountersPtr counters = make_counters();
  const AdValueGrad r = ad_reverse_grad(tape, counters);

  ojson doc;
  doc["command"] = "grad";
  doc["value"] = real_str(r.value);
  ojson grad = ojson::array();
  for (double gk : r.grad) grad.push_back(real_str(gk));
  doc["grad"] = std::move(grad);
  doc["point"] = [&] {
    ojson p = ojson::array();
    for (double x : tape.x0) p.push_back(real_str(x));
    return p;
  }();
  if (cfg.telemetry) doc["telemetry"] = counters_json(counters);
  emit(cfg, doc, out);
  return 0;
}

int cmd_second_order(const RunConfig& cfg, std::ostream& out) {
  const Input in = load_input(cfg);
  if (cfg.features_path.empty())
    throw ParseError("--features", "second-order needs --features FILE");
  const std::vector<FeatureMap> features =
      features_from_json(load_json(cfg.features_path, "features"));
  if (features.size() != 2)
    throw ParseError("/features",
                     "second-order needs exactly two feature maps, got " +
                         std::to_string(features.size()));
  const std::map<int, double> xi0 = real_xi(in);

  const double so = second_order_expectation(in.graph, xi0, features[0],
                                             features[1]);
  const double z = expectations_fb(in.graph, xi0, {}).z;

  ojson doc;
  doc["command"] = "second-order";
  doc["z"] = real_str(z);
  doc["second_order"] = real_str(so);
  doc["normalized"] = real_str(so / z);
  emit(cfg, doc, out);
  return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Semiring s = semiring_instance(cfg.semiring);
  std::mt19937_64 rng(0x5EED0001ull);  // fixed: output is part of the contract
  std::vector<LawReport> reports =
      semiring_law_suite(s, default_value_gen(s), cfg.cases, rng);
  try {
    const Semialgebra a = semialgebra_instance(cfg.semiring);
    std::vector<LawReport> algebra = semialgebra_law_suite(a, cfg.cases, rng);
    reports.insert(reports.end(), algebra.begin(), algebra.end());
  } catch (const Error&) {
    // Not an algebra name; the semiring laws above are the whole story.
  }

  ojson laws = ojson::array();
  for (const LawReport& r : reports)
    laws.push_back(ojson{{"law", r.law},
                         {"cases", r.cases},
                         {"passed", r.passed},
                         {"detail", r.detail}});
  ojson doc;
  doc["command"] = "validate";
  doc["instance"] = s.name();
  doc["cases"] = cfg.cases;
  doc["laws"] = std::move(laws);
  doc["all_passed"] = all_passed(reports);
  emit(cfg, doc, out);

  if (!all_passed(reports)) {
    for (const LawReport& r : reports)
      if (!r.passed) {
        err << "law violation [" << r.law << "]: " << r.detail << "\n";
        break;
      }
    return 3;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"computation-graph passes over commutative semirings"};
  app.require_subcommand(1);

  const auto add_output_flags = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    sub->add_flag("--telemetry", cfg.telemetry,
                  "append add/mul operation counts");
  };
  const auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("input", cfg.input, "input file (JSON), or - for stdin")
        ->required();
  };
  const auto add_semiring = [&cfg](CLI::App* sub, const char* help) {
    sub->add_option("--semiring,-s", cfg.semiring, help);
  };
  const auto add_checkpoint = [&cfg](CLI::App* sub) {
    sub->add_option("--checkpoint", cfg.checkpoint,
                    "retention policy: all, nodes or cutsets:K");
  };

  CLI::App* fw = app.add_subcommand(
      "forward", "weighted forward pass: the sink sum over a semiring");
  add_input(fw);
  add_semiring(fw, "semiring to run over (default real)");
  add_checkpoint(fw);
  add_output_flags(fw);

  CLI::App* ff = app.add_subcommand(
      "free-forward", "symbolic forward pass: the sink-sum polynomial");
  add_input(ff);
  add_checkpoint(ff);
  add_output_flags(ff);

  CLI::App* fb = app.add_subcommand(
      "fb", "forward-backward pass: per-node backward values and the "
            "combined first-order total");
  add_input(fb);
  add_semiring(fb, "cancellative scalar semiring (default real)");
  add_checkpoint(fb);
  add_output_flags(fb);

  CLI::App* ex = app.add_subcommand(
      "expect", "feature expectations from one forward-backward run, "
                "cross-checked against the per-feature route");
  add_input(ex);
  ex->add_option("--features", cfg.features_path,
                 "JSON array of {source id: real} feature maps")
      ->required();
  ex->add_option("--tol", cfg.tol, "cross-check tolerance (default 1e-9)");
  add_output_flags(ex);

  CLI::App* gr = app.add_subcommand(
      "grad", "value and full gradient of a tape by the backward pass");
  add_input(gr);
  gr->add_option("--point", cfg.point,
                 "comma-separated input values overriding the tape's x0");
  add_output_flags(gr);

  CLI::App* so = app.add_subcommand(
      "second-order", "second-order expectation of two features");
  add_input(so);
  so->add_option("--features", cfg.features_path,
                 "JSON array of exactly two feature maps")
      ->required();
  add_output_flags(so);

  CLI::App* va = app.add_subcommand(
      "validate", "run the algebraic law suites on a semiring instance");
  add_semiring(va, "instance to validate (default real)");
  va->add_option("--cases", cfg.cases, "random cases per law (default 1000)");
  add_output_flags(va);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "forward") return cmd_forward(cfg, out);
    if (cfg.command == "free-forward") return cmd_free_forward(cfg, out);
    if (cfg.command == "fb") return cmd_fb(cfg, out);
    if (cfg.command == "expect") return cmd_expect(cfg, out);
    if (cfg.command == "grad") return cmd_grad(cfg, out);
    if (cfg.command == "second-order") return cmd_second_order(cfg, out);
    return cmd_validate(cfg, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // what() is "<case>: <message>"; keep the case visible once.
    err << "error [" << e.what() << "]\n";
    return 3;
  }
}

}  // namespace semigraph
