#include "semigraph/cutset.hpp"

#include <algorithm>
#include <deque>

#include "semigraph/errors.hpp"

namespace semigraph {

namespace {

int elem_index(const Graph& g, const Element& e) {
  return e.kind == ElementKind::NODE ? e.id : g.n_nodes() + e.id;
}

}  // namespace

CutsetWalker::CutsetWalker(const Graph& g, Direction dir,
                           const std::vector<Element>& start)
    : g_(&g), dir_(dir) {
  done_.assign(g.n_elements(), 0);
  in_cut_.assign(g.n_elements(), 0);
  for (const Element& e : start) {
    if (!g.contains(e))
      throw Error("UnknownElement", element_str(e) + " is not in the graph");
    in_cut_[elem_index(g, e)] = 1;
  }

  // done = everything at or below the cutset (at or above for BACKWARD),
  // found by walking covers away from the traversal direction.
  std::deque<Element> queue(start.begin(), start.end());
  for (const Element& e : start) done_[elem_index(g, e)] = 1;
  while (!queue.empty()) {
    Element e = queue.front();
    queue.pop_front();
    std::vector<Element> preds;
    if (dir_ == Direction::FORWARD) {
      if (e.kind == ElementKind::NODE) {
        for (int a : g.in_arcs(e.id)) preds.push_back(arc_elem(a));
      } else {
        preds.push_back(node_elem(g.arc(e.id).tail));
      }
    } else {
      if (e.kind == ElementKind::NODE) {
        for (int a : g.out_arcs(e.id)) preds.push_back(arc_elem(a));
      } else {
        preds.push_back(node_elem(g.arc(e.id).head));
      }
    }
    for (const Element& p : preds) {
      int i = elem_index(g, p);
      if (!done_[i]) {
        done_[i] = 1;
        queue.push_back(p);
      }
    }
  }

  remaining_ = g.n_elements();
  for (char d : done_) remaining_ -= d;
  finger_ = dir_ == Direction::FORWARD ? 0 : g.n_elements() - 1;

  cutset_.assign(start.begin(), start.end());
  std::sort(cutset_.begin(), cutset_.end());
  cutset_.erase(std::unique(cutset_.begin(), cutset_.end()), cutset_.end());
}

bool CutsetWalker::is_done(const Element& e) const {
  return done_[elem_index(*g_, e)];
}

void CutsetWalker::mark_done(const Element& e) {
  done_[elem_index(*g_, e)] = 1;
  --remaining_;
}

bool CutsetWalker::at_terminal() const { return remaining_ == 0; }

CutsetStep CutsetWalker::step() {
  const Graph& g = *g_;
  const auto& schedule = g.schedule();
  const int n = g.n_elements();
  const int dstep = dir_ == Direction::FORWARD ? 1 : -1;
  while (finger_ >= 0 && finger_ < n && done_[elem_index(g, schedule[finger_])])
    finger_ += dstep;
  if (finger_ < 0 || finger_ >= n)
    throw Error("AtTerminalCutset", "the cutset is already terminal");

  // y is the extremal unprocessed element; it decides which x of the
  // cutset gets passed and what patch replaces it.
  Element y = schedule[finger_];
  CutsetStep step;
  auto expect_in_cut = [&](const Element& e) {
    if (!in_cut_[elem_index(g, e)])
      throw Error("NotACutset",
                  element_str(e) + " should lie on the current cutset");
  };

  if (dir_ == Direction::FORWARD) {
    if (y.kind == ElementKind::NODE) {
      // All in-arcs of y are on the cutset; pass the smallest and absorb
      // them all. A source here would mean the start was not a cutset.
      if (g.in_arcs(y.id).empty())
        throw Error("NotACutset", element_str(y) + " was never covered");
      for (int a : g.in_arcs(y.id)) {
        expect_in_cut(arc_elem(a));
        step.d_old.push_back(arc_elem(a));
      }
      step.x = step.d_old.front();
      step.d_new.push_back(y);
    } else {
      // The tail node is on the cutset; replace it by all its out-arcs.
      Element tail = node_elem(g.arc(y.id).tail);
      expect_in_cut(tail);
      step.x = tail;
      step.d_old.push_back(tail);
      for (int a : g.out_arcs(tail.id)) step.d_new.push_back(arc_elem(a));
    }
  } else {
    if (y.kind == ElementKind::NODE) {
      if (g.out_arcs(y.id).empty())
        throw Error("NotACutset", element_str(y) + " was never covered");
      for (int a : g.out_arcs(y.id)) {
        expect_in_cut(arc_elem(a));
        step.d_old.push_back(arc_elem(a));
      }
      step.x = step.d_old.front();
      step.d_new.push_back(y);
    } else {
      Element head = node_elem(g.arc(y.id).head);
      expect_in_cut(head);
      step.x = head;
      step.d_old.push_back(head);
      for (int a : g.in_arcs(head.id)) step.d_new.push_back(arc_elem(a));
    }
  }

  for (const Element& e : step.d_old) in_cut_[elem_index(g, e)] = 0;
  for (const Element& e : step.d_new) {
    in_cut_[elem_index(g, e)] = 1;
    mark_done(e);
  }

  // Patch the materialized cutset: drop d_old, append d_new, restore order.
  std::vector<Element> next;
  next.reserve(cutset_.size() + step.d_new.size());
  for (const Element& e : cutset_)
    if (in_cut_[elem_index(g, e)]) next.push_back(e);
  for (const Element& e : step.d_new) next.push_back(e);
  std::sort(next.begin(), next.end());
  cutset_ = std::move(next);
  return step;
}

CutsetAdvance advance_cutset(const Graph& g, const std::vector<Element>& c,
                             Direction dir,
                             const std::map<Element, Value>& values_on_c) {
  for (const Element& e : c)
    if (!g.contains(e))
      throw Error("UnknownElement", element_str(e) + " is not in the graph");
  for (const Element& e : c)
    if (values_on_c.find(e) == values_on_c.end())
      throw Error("SourceValueMissing",
                  "no value for cutset element " + element_str(e));
  for (const auto& [e, v] : values_on_c) {
    (void)v;
    if (std::find(c.begin(), c.end(), e) == c.end())
      throw Error("SourceValueMissing",
                  "value for " + element_str(e) + " which is not on the cutset");
  }

  CutsetWalker walker(g, dir, c);
  CutsetStep step = walker.step();
  return {step.x, step.d_new, step.d_old, walker.cutset()};
}

}  // namespace semigraph
