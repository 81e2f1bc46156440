#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "semigraph/cutset.hpp"
#include "semigraph/errors.hpp"
#include "semigraph/graph.hpp"

using namespace semigraph;

namespace {

// Two sources feeding an ADD and a MUL that join in a final ADD:
//   0 --a0--> 2(+) --a4--> 4(+)
//   0 --a1--> 3(*) --a5--> 4
//   1 --a2--> 2
//   1 --a3--> 3
Graph join_graph() {
  return build_graph(5, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {3, 4}},
                     {{2, OpTag::ADD}, {3, OpTag::MUL}, {4, OpTag::ADD}});
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("build exposes structure") {
  const Graph g = join_graph();
  CHECK(g.n_nodes() == 5);
  CHECK(g.n_arcs() == 6);
  CHECK(g.n_elements() == 11);
  CHECK(g.is_source(0));
  CHECK(g.is_source(1));
  CHECK(!g.is_source(2));
  CHECK(g.is_sink(4));
  CHECK(!g.is_sink(2));
  CHECK(g.op(2) == OpTag::ADD);
  CHECK(g.op(3) == OpTag::MUL);
  CHECK(g.sources() == std::vector<int>{0, 1});
  CHECK(g.sinks() == std::vector<int>{4});
  CHECK(g.in_arcs(2) == std::vector<int>{0, 2});
  CHECK(g.out_arcs(1) == std::vector<int>{2, 3});
  CHECK(g.arc(4).tail == 2);
  CHECK(g.arc(4).head == 4);
  CHECK(g.source_index(0) == 0);
  CHECK(g.source_index(1) == 1);
  CHECK(g.contains(node_elem(4)));
  CHECK(g.contains(arc_elem(5)));
  CHECK(!g.contains(arc_elem(6)));
  CHECK(!g.contains(node_elem(-1)));
}

TEST_CASE("parallel arcs are allowed") {
  const Graph g = build_graph(2, {{0, 1}, {0, 1}}, {{1, OpTag::MUL}});
  CHECK(g.n_arcs() == 2);
  CHECK(g.in_arcs(1) == std::vector<int>{0, 1});
}

TEST_CASE("build rejects malformed graphs") {
  CHECK_THROWS_WITH_AS(build_graph(2, {{0, 1}, {1, 0}}, {{0, OpTag::ADD}, {1, OpTag::ADD}}),
                       doctest::Contains("CycleDetected"), Error);
  CHECK_THROWS_WITH_AS(build_graph(1, {{0, 0}}, {{0, OpTag::ADD}}),
                       doctest::Contains("CycleDetected"), Error);
  CHECK_THROWS_WITH_AS(build_graph(2, {{0, 5}}, {{1, OpTag::ADD}}),
                       doctest::Contains("UnknownElement"), Error);
  CHECK_THROWS_WITH_AS(build_graph(2, {{0, 1}}, {}),
                       doctest::Contains("MissingOpTag"), Error);
  CHECK_THROWS_WITH_AS(build_graph(2, {{0, 1}}, {{0, OpTag::ADD}, {1, OpTag::ADD}}),
                       doctest::Contains("OpOnSource"), Error);
}

TEST_CASE("explicit source order permutes sources()") {
  const Graph g = build_graph(3, {{0, 2}, {1, 2}}, {{2, OpTag::ADD}}, {1, 0});
  CHECK(g.sources() == std::vector<int>{1, 0});
  CHECK(g.source_index(1) == 0);
  CHECK(g.source_index(0) == 1);

  CHECK_THROWS_WITH_AS(build_graph(3, {{0, 2}, {1, 2}}, {{2, OpTag::ADD}}, {0}),
                       doctest::Contains("BadSourceOrder"), Error);
  CHECK_THROWS_WITH_AS(build_graph(3, {{0, 2}, {1, 2}}, {{2, OpTag::ADD}}, {0, 0}),
                       doctest::Contains("BadSourceOrder"), Error);
  CHECK_THROWS_WITH_AS(build_graph(3, {{0, 2}, {1, 2}}, {{2, OpTag::ADD}}, {0, 2}),
                       doctest::Contains("BadSourceOrder"), Error);
}

TEST_CASE("poset order: tail < arc < head, branches incomparable") {
  const Graph g = join_graph();
  CHECK(poset_leq(g, node_elem(0), node_elem(0)));
  CHECK(poset_leq(g, node_elem(0), arc_elem(0)));
  CHECK(poset_leq(g, arc_elem(0), node_elem(2)));
  CHECK(poset_leq(g, node_elem(0), node_elem(4)));
  CHECK(poset_leq(g, arc_elem(1), arc_elem(5)));
  // The two branches are incomparable.
  CHECK(!poset_leq(g, node_elem(2), node_elem(3)));
  CHECK(!poset_leq(g, node_elem(3), node_elem(2)));
  CHECK(!poset_leq(g, node_elem(4), node_elem(0)));
}

TEST_CASE("schedule is a linear extension with smallest-id tie break") {
  const Graph g = join_graph();
  const auto sched = topological_schedule(g);
  CHECK(static_cast<int>(sched.size()) == g.n_elements());
  for (int e = 0; e < g.n_arcs(); ++e) {
    CHECK(g.schedule_pos(node_elem(g.arc(e).tail)) < g.schedule_pos(arc_elem(e)));
    CHECK(g.schedule_pos(arc_elem(e)) < g.schedule_pos(node_elem(g.arc(e).head)));
  }
  // Ready elements are taken nodes-before-arcs by id: both sources first.
  CHECK(sched[0] == node_elem(0));
  CHECK(sched[1] == node_elem(1));
  for (int i = 0; i < g.n_elements(); ++i)
    CHECK(g.schedule_pos(sched[i]) == i);
}

TEST_CASE("schedule respects the poset on random graphs") {
  std::mt19937_64 rng(7101);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = oracle::random_dag(rng);
    for (int e = 0; e < g.n_arcs(); ++e) {
      CHECK(g.schedule_pos(node_elem(g.arc(e).tail)) < g.schedule_pos(arc_elem(e)));
      CHECK(g.schedule_pos(arc_elem(e)) < g.schedule_pos(node_elem(g.arc(e).head)));
    }
  }
}

TEST_CASE("antichain cutset recognition") {
  const Graph g = join_graph();
  auto nodes = [](std::initializer_list<int> ids) {
    std::vector<Element> v;
    for (int id : ids) v.push_back(node_elem(id));
    return v;
  };
  CHECK(is_antichain_cutset(g, nodes({0, 1})));
  CHECK(is_antichain_cutset(g, nodes({4})));
  CHECK(is_antichain_cutset(g, nodes({2, 3})));
  CHECK(is_antichain_cutset(g, {node_elem(2), arc_elem(1), arc_elem(3)}));
  // A chain is not an antichain.
  CHECK(!is_antichain_cutset(g, {node_elem(0), arc_elem(0)}));
  // An antichain that misses the other branch's chains is not a cutset.
  CHECK(!is_antichain_cutset(g, nodes({2})));
  CHECK(!is_antichain_cutset(g, {}));
}

TEST_CASE("forward walk visits every element once and keeps cutsets valid") {
  std::mt19937_64 rng(7102);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = oracle::random_dag(rng);
    std::vector<Element> start;
    for (int v : g.sources()) start.push_back(node_elem(v));
    CutsetWalker walker(g, Direction::FORWARD, start);
    std::set<Element> seen(start.begin(), start.end());
    while (!walker.at_terminal()) {
      const CutsetStep step = walker.step();
      for (const Element& e : step.d_new) CHECK(seen.insert(e).second);
      CHECK(is_antichain_cutset(g, walker.cutset()));
    }
    CHECK(static_cast<int>(seen.size()) == g.n_elements());
    std::vector<Element> sinks;
    for (int v : g.sinks()) sinks.push_back(node_elem(v));
    std::sort(sinks.begin(), sinks.end());
    std::vector<Element> terminal = walker.cutset();
    std::sort(terminal.begin(), terminal.end());
    CHECK(terminal == sinks);
    CHECK_THROWS_WITH_AS(walker.step(), doctest::Contains("AtTerminalCutset"), Error);
  }
}

TEST_CASE("backward walk reaches the sources") {
  const Graph g = join_graph();
  std::vector<Element> start;
  for (int v : g.sinks()) start.push_back(node_elem(v));
  CutsetWalker walker(g, Direction::BACKWARD, start);
  while (!walker.at_terminal()) walker.step();
  std::vector<Element> terminal = walker.cutset();
  std::sort(terminal.begin(), terminal.end());
  CHECK(terminal == std::vector<Element>{node_elem(0), node_elem(1)});
}

TEST_CASE("step shape on a node and on an arc") {
  // 0 -> 1(+): passing the source replaces it by its out-arcs; passing the
  // arc replaces the head's full in-arc set by the head.
  const Graph g = build_graph(2, {{0, 1}}, {{1, OpTag::ADD}});
  CutsetWalker walker(g, Direction::FORWARD, {node_elem(0)});
  CutsetStep s1 = walker.step();
  CHECK(s1.x == node_elem(0));
  CHECK(s1.d_old == std::vector<Element>{node_elem(0)});
  CHECK(s1.d_new == std::vector<Element>{arc_elem(0)});
  CutsetStep s2 = walker.step();
  CHECK(s2.x == arc_elem(0));
  CHECK(s2.d_old == std::vector<Element>{arc_elem(0)});
  CHECK(s2.d_new == std::vector<Element>{node_elem(1)});
  CHECK(walker.at_terminal());
}

TEST_CASE("advance_cutset validates its value map") {
  const Graph g = join_graph();
  std::map<Element, Value> values{{node_elem(0), 1.0}, {node_elem(1), 2.0}};
  const CutsetAdvance adv =
      advance_cutset(g, {node_elem(0), node_elem(1)}, Direction::FORWARD, values);
  CHECK(adv.x == node_elem(0));
  CHECK(adv.c_next.size() == 3);  // arcs 0,1 plus node 1

  std::map<Element, Value> missing{{node_elem(0), 1.0}};
  CHECK_THROWS_WITH_AS(
      advance_cutset(g, {node_elem(0), node_elem(1)}, Direction::FORWARD, missing),
      doctest::Contains("SourceValueMissing"), Error);
  CHECK_THROWS_WITH_AS(
      advance_cutset(g, {node_elem(4)}, Direction::FORWARD, {{node_elem(4), 1.0}}),
      doctest::Contains("AtTerminalCutset"), Error);
}

TEST_CASE("element helpers") {
  CHECK(element_str(node_elem(3)) == "n3");
  CHECK(element_str(arc_elem(0)) == "a0");
  CHECK(node_elem(1) < arc_elem(0));  // nodes order before arcs
  CHECK(node_elem(1) != arc_elem(1));
}

}  // TEST_SUITE
