#include "semigraph/semiring.hpp"

#include "semigraph/errors.hpp"

namespace semigraph {

Value Semiring::parse(const std::string& text) const {
  if (!ops_->parse)
    throw Error("UnparsableValue",
                "instance '" + ops_->name + "' has no textual element syntax");
  return ops_->parse(text);
}

Value Semiring::repeat(const mpz_class& n, const Value& a) const {
  if (n < 0) throw Error("NegativeRepeat", "repetition count must be >= 0");
  if (n == 1) return a;  // 1-fold repetition is free
  Value acc = zero();
  Value base = a;
  mpz_class k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add(acc, base);
    k >>= 1;
    if (k > 0) base = add(base, base);
  }
  return acc;
}

Value Semiring::repeat(std::uint64_t n, const Value& a) const {
  return repeat(mpz_class(static_cast<unsigned long>(n)), a);
}

Value Semiring::pow(const Value& a, std::uint64_t n) const {
  if (n == 1) return a;  // a^1 is free
  Value acc = one();
  Value base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return acc;
}

Semiring Semiring::instrumented(CountersPtr counters) const {
  auto ops = std::make_shared<Ops>(*ops_);
  ops->counters = std::move(counters);
  return Semiring(std::move(ops));
}

}  // namespace semigraph
