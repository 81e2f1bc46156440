#pragma once

// Cutset traversal. A forward or backward pass never materializes the whole
// graph's values: it keeps values on one antichain cutset and repeatedly
// replaces a small patch of it. CutsetWalker produces that sequence of
// elementary steps; advance_cutset is the one-shot wrapper around it.

#include <map>
#include <vector>

#include "semigraph/graph.hpp"
#include "semigraph/semiring.hpp"

namespace semigraph {

enum class Direction { FORWARD, BACKWARD };

// One elementary cutset move: x is the element of the current cutset being
// passed, d_old the set removed from the cutset (always containing x), and
// d_new the set added. For FORWARD, when x is a node d_new is its out-arcs
// and d_old its singleton; when x is an arc d_new is {head} and d_old the
// head's full in-arc set. BACKWARD is the mirror image.
struct CutsetStep {
  Element x;
  std::vector<Element> d_new;
  std::vector<Element> d_old;
};

// Incrementally walks antichain cutsets from an arbitrary starting cutset
// to the terminal one (sinks for FORWARD, sources for BACKWARD). The choice
// of which element to pass next follows the fixed topological schedule, so
// two walks from the same cutset always perform the same steps in the same
// order; replayed float arithmetic is bit-identical.
class CutsetWalker {
 public:
  CutsetWalker(const Graph& g, Direction dir, const std::vector<Element>& start);

  bool at_terminal() const;
  const std::vector<Element>& cutset() const { return cutset_; }

  // Advances past one element; throws Error("AtTerminalCutset") when no
  // move remains.
  CutsetStep step();

 private:
  const Graph* g_;
  Direction dir_;
  std::vector<Element> cutset_;
  std::vector<char> done_;    // elements strictly behind the cutset, plus the cutset itself
  std::vector<char> in_cut_;
  int finger_;                // monotone scan position in the schedule
  int remaining_;             // elements not yet behind the cutset

  bool is_done(const Element& e) const;
  void mark_done(const Element& e);
};

struct CutsetAdvance {
  Element x;
  std::vector<Element> d_new;
  std::vector<Element> d_old;
  std::vector<Element> c_next;
};

// Single-step form used by callers that hold their own value map:
// validates that values_on_c covers exactly c, then performs one walker
// step and reports the resulting cutset. Throws Error("AtTerminalCutset")
// at the terminal cutset and Error("SourceValueMissing") /
// Error("UnknownElement") on a bad value map.
CutsetAdvance advance_cutset(const Graph& g, const std::vector<Element>& c,
                             Direction dir,
                             const std::map<Element, Value>& values_on_c);

}  // namespace semigraph
