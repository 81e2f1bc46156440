#pragma once

// Randomized law suites: semiring axioms, semialgebra structure-constant
// conditions, and monoid-homomorphism laws. Used by the test suite and the
// CLI `validate` command.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "semigraph/hom.hpp"
#include "semigraph/semialgebra.hpp"
#include "semigraph/semiring.hpp"

namespace semigraph {

struct LawReport {
  std::string law;
  std::uint64_t cases = 0;
  bool passed = true;
  std::string detail;  // first counterexample, when failed
};

using ValueGen = std::function<Value(std::mt19937_64&)>;

// Random values appropriate to a registered instance (small magnitudes so
// float tolerances stay meaningful). Throws Error("UnknownInstance") for
// names it has no generator for.
ValueGen default_value_gen(const Semiring& s);

// Commutativity, associativity, identities, distributivity (both sides),
// and absorbing zero; `cases` random triples per law.
std::vector<LawReport> semiring_law_suite(const Semiring& s, const ValueGen& gen,
                                          int cases, std::mt19937_64& rng);

// Exhaustive structure-constant checks over all basis pairs/triples
// (commutativity, associativity, unitality) plus randomized checks of the
// reconstructed multiplication: semiring laws on random elements and the
// basis law (s u)(t v) = (s t)(u v).
std::vector<LawReport> semialgebra_law_suite(const Semialgebra& a, int cases,
                                             std::mt19937_64& rng);

// f(0) = 1 and f(a + b) = f(a) f(b) on random pairs.
std::vector<LawReport> hom_law_suite(const MonoidHom& hom, int cases,
                                     std::mt19937_64& rng);

bool all_passed(const std::vector<LawReport>& reports);

}  // namespace semigraph
