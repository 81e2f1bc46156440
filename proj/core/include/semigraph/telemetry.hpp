#pragma once

// Operation counters. A semiring can be wrapped so that every add/mul
// invocation bumps a shared counter; cost comparisons between algorithm
// variants are then observable facts instead of claims.

#include <atomic>
#include <cstdint>
#include <memory>

namespace semigraph {

struct OpCounters {
  std::atomic<std::uint64_t> adds{0};
  std::atomic<std::uint64_t> muls{0};

  std::uint64_t total() const {
    return adds.load(std::memory_order_relaxed) +
           muls.load(std::memory_order_relaxed);
  }
  void reset() {
    adds.store(0, std::memory_order_relaxed);
    muls.store(0, std::memory_order_relaxed);
  }
};

using CountersPtr = std::shared_ptr<OpCounters>;

inline CountersPtr make_counters() { return std::make_shared<OpCounters>(); }

}  // namespace semigraph
