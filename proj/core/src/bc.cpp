#include "semigraph/bc.hpp"

#include <vector>

#include "semigraph/errors.hpp"

namespace semigraph {

namespace {
constexpr unsigned kMaxBinomialN = 64;
}

const mpz_class& binomial(unsigned n, unsigned k) {
  if (n > kMaxBinomialN)
    throw Error("OrderMismatch",
                "binomial coefficients precomputed only up to n = 64");
  static const std::vector<std::vector<mpz_class>> table = [] {
    std::vector<std::vector<mpz_class>> t(kMaxBinomialN + 1);
    for (unsigned i = 0; i <= kMaxBinomialN; ++i) {
      t[i].resize(i + 2);
      t[i][0] = 1;
      for (unsigned j = 1; j <= i; ++j)
        t[i][j] = t[i - 1][j - 1] + (j < i ? t[i - 1][j] : 0);
      t[i][i + 1] = 0;  // C(i, i+1) = 0 simplifies callers
    }
    return t;
  }();
  if (k > n) return table[n][n + 1];
  return table[n][k];
}

BCValue bc_zero(const Semiring& base, int order) {
  BCValue v;
  v.comps.assign(order + 1, base.zero());
  return v;
}

BCValue bc_one(const Semiring& base, int order) {
  BCValue v = bc_zero(base, order);
  v.comps[0] = base.one();
  return v;
}

namespace {
void check_order(const BCValue& a, const BCValue& b) {
  if (a.comps.size() != b.comps.size())
    throw Error("OrderMismatch", "orders " + std::to_string(a.comps.size() - 1) +
                                     " and " + std::to_string(b.comps.size() - 1));
}
}  // namespace

BCValue bc_add(const Semiring& base, const BCValue& a, const BCValue& b) {
  check_order(a, b);
  BCValue r;
  r.comps.reserve(a.comps.size());
  for (std::size_t i = 0; i < a.comps.size(); ++i)
    r.comps.push_back(base.add(a.comps[i], b.comps[i]));
  return r;
}

BCValue bc_mul(const Semiring& base, const BCValue& a, const BCValue& b) {
  check_order(a, b);
  const std::size_t n = a.comps.size();
  BCValue r;
  r.comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Binomial weights of 1 skip the repetition so the base-op cost of an
    // order-1 product is exactly the dual-number cost (3 muls, 1 add).
    Value acc;
    bool have = false;
    for (std::size_t j = 0; j <= i; ++j) {
      Value prod = base.mul(a.comps[j], b.comps[i - j]);
      const mpz_class& c = binomial(static_cast<unsigned>(i), static_cast<unsigned>(j));
      Value term = (c == 1) ? std::move(prod) : base.repeat(c, prod);
      acc = have ? base.add(acc, term) : std::move(term);
      have = true;
    }
    r.comps.push_back(std::move(acc));
  }
  return r;
}

}  // namespace semigraph
