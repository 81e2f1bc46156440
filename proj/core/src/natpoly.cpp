#include "semigraph/natpoly.hpp"

#include <cstdio>
#include <limits>

#include "semigraph/errors.hpp"

namespace semigraph {

namespace {

void check_arity(const NatPoly& p, const NatPoly& q) {
  if (p.n_vars != q.n_vars)
    throw Error("ArityMismatch",
                "polynomials over " + std::to_string(p.n_vars) + " and " +
                    std::to_string(q.n_vars) + " variables");
}

}  // namespace

NatPoly natpoly_zero(int n_vars) { return NatPoly{n_vars, {}}; }

NatPoly natpoly_one(int n_vars) { return natpoly_const(n_vars, 1); }

NatPoly natpoly_const(int n_vars, const mpz_class& c) {
  NatPoly p{n_vars, {}};
  if (c != 0) p.terms[NatPoly::Exponents(n_vars, 0)] = c;
  return p;
}

NatPoly natpoly_var(int n_vars, int index) {
  if (index < 0 || index >= n_vars)
    throw Error("ArityMismatch", "variable index " + std::to_string(index) +
                                     " out of range for " +
                                     std::to_string(n_vars) + " variables");
  NatPoly p{n_vars, {}};
  NatPoly::Exponents e(n_vars, 0);
  e[index] = 1;
  p.terms[e] = 1;
  return p;
}

NatPoly natpoly_add(const NatPoly& p, const NatPoly& q) {
  check_arity(p, q);
  NatPoly r = p;
  for (const auto& [e, c] : q.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

NatPoly natpoly_mul(const NatPoly& p, const NatPoly& q) {
  check_arity(p, q);
  NatPoly r{p.n_vars, {}};
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [ep, cp] : p.terms) {
    for (const auto& [eq, cq] : q.terms) {
      NatPoly::Exponents e(p.n_vars);
      for (int i = 0; i < p.n_vars; ++i) {
        std::uint64_t s = std::uint64_t(ep[i]) + std::uint64_t(eq[i]);
        if (s > kMax)
          throw Error("ExponentOverflow",
                      "exponent of x" + std::to_string(i) + " exceeds 2^32-1");
        e[i] = static_cast<std::uint32_t>(s);
      }
      mpz_class c = cp * cq;
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        if (c != 0) r.terms.emplace(std::move(e), std::move(c));
      } else {
        it->second += c;
        if (it->second == 0) r.terms.erase(it);
      }
    }
  }
  return r;
}

Value natpoly_eval(const NatPoly& p, const Semiring& s,
                   const std::vector<Value>& values) {
  if (static_cast<int>(values.size()) != p.n_vars)
    throw Error("ArityMismatch", std::to_string(values.size()) +
                                     " values for a polynomial over " +
                                     std::to_string(p.n_vars) + " variables");
  Value acc = s.zero();
  for (const auto& [e, c] : p.terms) {
    Value term = s.one();
    for (int i = 0; i < p.n_vars; ++i)
      if (e[i] > 0) term = s.mul(term, s.pow(values[i], e[i]));
    acc = s.add(acc, s.repeat(c, term));
  }
  return acc;
}

std::string natpoly_str(const NatPoly& p) {
  if (p.terms.empty()) return "0";
  std::string out;
  // Descending exponent-lex order: walk the map backwards.
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += " + ";
    std::string mono;
    for (int i = 0; i < p.n_vars; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + "*" + mono;
    }
  }
  return out;
}

NatPoly natpoly_derivative(const NatPoly& p, int index) {
  if (index < 0 || index >= p.n_vars)
    throw Error("ArityMismatch", "variable index " + std::to_string(index) +
                                     " out of range for " +
                                     std::to_string(p.n_vars) + " variables");
  NatPoly r{p.n_vars, {}};
  for (const auto& [e, c] : p.terms) {
    if (e[index] == 0) continue;
    NatPoly::Exponents d = e;
    d[index] -= 1;
    r.terms[d] += c * e[index];
  }
  return r;
}

}  // namespace semigraph
