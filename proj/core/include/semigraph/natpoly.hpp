#pragma once

// Sparse multivariate polynomials over the natural numbers. These are the
// carrier of the free forward variable: every source of a graph becomes an
// indeterminate, and each monomial of a sink value records one way the
// sinks can be assembled from the sources.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "semigraph/semiring.hpp"

namespace semigraph {

struct NatPoly {
  using Exponents = std::vector<std::uint32_t>;  // one entry per variable

  int n_vars = 0;
  // Canonical sparse form: no zero coefficients stored. Map ordering gives
  // exponent-vector lexicographic term order.
  std::map<Exponents, mpz_class> terms;

  bool operator==(const NatPoly& other) const {
    return n_vars == other.n_vars && terms == other.terms;
  }
};

NatPoly natpoly_zero(int n_vars);
NatPoly natpoly_one(int n_vars);
// The monomial x_index.
NatPoly natpoly_var(int n_vars, int index);
NatPoly natpoly_const(int n_vars, const mpz_class& c);

// Throw Error("ArityMismatch") when variable counts differ.
NatPoly natpoly_add(const NatPoly& p, const NatPoly& q);
// Also throws Error("ExponentOverflow") if an exponent would exceed the
// 32-bit representation.
NatPoly natpoly_mul(const NatPoly& p, const NatPoly& q);

// Substitutes values[i] for x_i and evaluates in s, with coefficients
// acting by repetition: sum_i c_i * v_1^{i_1} * ... * v_n^{i_n}.
// Throws Error("ArityMismatch") when values.size() != p.n_vars.
Value natpoly_eval(const NatPoly& p, const Semiring& s,
                   const std::vector<Value>& values);

// Canonical printing: terms in descending exponent-lexicographic order,
// factors joined by '*', powers with '^', unit coefficients elided —
// e.g. "x0*x1 + x0*x2 + x2", "2*x0^2 + 3", "0".
std::string natpoly_str(const NatPoly& p);

// Coefficient-wise symbolic derivative with respect to x_index; exact.
NatPoly natpoly_derivative(const NatPoly& p, int index);

}  // namespace semigraph
