#pragma once

// Binomial-convolution values. A value of order n over a base semiring S is
// a tuple (c_0, ..., c_n); addition is componentwise, multiplication is
//   (a*b)_i = sum_{j<=i} C(i,j) * a_j * b_{i-j},
// with the binomial coefficient acting by repetition in S. Order 1 over the
// reals is the dual-number semiring, which is what drives the first-order
// differentiation paths.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "semigraph/semiring.hpp"

namespace semigraph {

struct BCValue {
  // comps.size() == order + 1; component types are values of the base.
  std::vector<Value> comps;
};

// C(n, k) as an exact integer, cached for n up to 64.
const mpz_class& binomial(unsigned n, unsigned k);

BCValue bc_zero(const Semiring& base, int order);
BCValue bc_one(const Semiring& base, int order);

// Throw Error("OrderMismatch") when tuple lengths differ.
BCValue bc_add(const Semiring& base, const BCValue& a, const BCValue& b);
BCValue bc_mul(const Semiring& base, const BCValue& a, const BCValue& b);

// The binomial-convolution semiring over an arbitrary base handle (the
// named instances only cover registered bases). Order is limited to 0..64
// (Error("OrderMismatch") beyond).
Semiring bc_semiring(const Semiring& base, int order);

}  // namespace semigraph
