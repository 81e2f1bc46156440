#pragma once

// Monoid homomorphisms used to parametrize graphs: maps from (R, +, 0) into
// the multiplicative monoid of a semiring, so that source parameters can be
// pushed through before a forward pass. The hom laws f(0) = 1 and
// f(a + b) = f(a) * f(b) are what make parameter-shift arguments work.

#include <functional>
#include <string>

#include "semigraph/semiring.hpp"

namespace semigraph {

struct MonoidHom {
  std::string name;
  Semiring target;
  std::function<Value(double)> apply;
};

// a |-> a into the multiplicative monoid of the reals (not a monoid hom in
// the additive sense; provided for driving graphs whose sources are already
// multiplicative weights).
MonoidHom identity_hom();

// a |-> exp(a) into the reals.
MonoidHom exp_hom();

// a |-> (cos a, sin a) into the 2x2 rotation semiring; addition of angles
// becomes multiplication of rotations.
MonoidHom cos_sin_hom();

// a |-> (a^0, a^1, ..., a^n) into bc(real, n); the binomial theorem makes
// this a hom from (R, +) into the multiplicative monoid.
MonoidHom powers_hom(int n);

}  // namespace semigraph
