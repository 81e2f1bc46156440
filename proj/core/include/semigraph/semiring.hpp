#pragma once

// Commutative semirings as first-class runtime values. A Semiring is an
// immutable handle describing a carrier set together with add, mul, zero,
// one, an equality predicate and a cancellativity flag. Elements travel as
// std::any so that graphs, engines and the CLI can be written once and run
// over any registered instance.

#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include <gmpxx.h>

#include "semigraph/telemetry.hpp"

namespace semigraph {

using Value = std::any;

class Semiring {
 public:
  struct Ops {
    std::string name;
    bool cancellative = false;
    Value zero;
    Value one;
    std::function<Value(const Value&, const Value&)> add;
    std::function<Value(const Value&, const Value&)> mul;
    // Equality contract of the instance: exact for discrete carriers,
    // combined absolute/relative tolerance for floating ones.
    std::function<bool(const Value&, const Value&)> eq;
    // Exact test against the additive identity, used to keep sparse
    // representations canonical. Never tolerance-based.
    std::function<bool(const Value&)> is_zero;
    // Carrier membership check for the wrapped std::any.
    std::function<bool(const Value&)> accepts;
    std::function<std::string(const Value&)> str;
    // Parser for value-file entries; null if the instance has no textual
    // element syntax (e.g. polynomials are built programmatically).
    std::function<Value(const std::string&)> parse;
    CountersPtr counters;  // optional; bumped by add/mul when set
  };

  explicit Semiring(std::shared_ptr<const Ops> ops) : ops_(std::move(ops)) {}

  const std::string& name() const { return ops_->name; }
  bool cancellative() const { return ops_->cancellative; }
  Value zero() const { return ops_->zero; }
  Value one() const { return ops_->one; }

  Value add(const Value& a, const Value& b) const {
    if (ops_->counters)
      ops_->counters->adds.fetch_add(1, std::memory_order_relaxed);
    return ops_->add(a, b);
  }
  Value mul(const Value& a, const Value& b) const {
    if (ops_->counters)
      ops_->counters->muls.fetch_add(1, std::memory_order_relaxed);
    return ops_->mul(a, b);
  }

  bool eq(const Value& a, const Value& b) const { return ops_->eq(a, b); }
  bool is_zero(const Value& a) const { return ops_->is_zero(a); }
  bool accepts(const Value& a) const { return ops_->accepts(a); }
  std::string str(const Value& a) const { return ops_->str(a); }

  bool can_parse() const { return static_cast<bool>(ops_->parse); }
  // Throws Error("UnparsableValue") when the instance has no parser.
  Value parse(const std::string& text) const;

  // n-fold repetition n·a = a + ... + a with the empty sum equal to zero.
  // Computed by binary doubling so that huge counts (e.g. path counts
  // appearing as polynomial coefficients) stay cheap.
  Value repeat(const mpz_class& n, const Value& a) const;
  Value repeat(std::uint64_t n, const Value& a) const;
  // a^n with the empty product equal to one (so a^0 = 1 even for a = 0).
  Value pow(const Value& a, std::uint64_t n) const;

  // A copy of this semiring whose add/mul bump the given counters.
  Semiring instrumented(CountersPtr counters) const;

  // Handles compare by shared identity of their op tables.
  bool same_instance(const Semiring& other) const { return ops_ == other.ops_; }

 private:
  std::shared_ptr<const Ops> ops_;
};

// Looks up an instance by name. Accepted names:
//   real | rational | logreal | maxplus | complex2
//   natpoly(N) | bc(BASE,N) | bcN (sugar for bc(real,N))
//   tensor(S1,...,Sk) over cancellative factor names
// Throws Error("UnknownInstance") for anything else.
Semiring semiring_instance(const std::string& name);

}  // namespace semigraph
