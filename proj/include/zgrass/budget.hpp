// budget.hpp — a global work budget for exhaustive operations.
//
// Enumerations, oracles and clique searches charge coarse units (one per
// candidate, pair, or search node). When the cap is hit they throw
// BudgetExceeded instead of silently degrading to sampling: results are
// exact or absent.
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>

#include "errors.hpp"

namespace zgrass {

class Budget {
 public:
  static constexpr std::uint64_t kDefaultCap = 10'000'000;

  static Budget& instance() {
    static Budget b;
    return b;
  }

  // Fresh meter with the given cap (or the environment/default cap).
  void reset(std::uint64_t cap) {
    cap_.store(cap);
    spent_.store(0);
  }
  void reset() { reset(env_cap()); }

  void charge(std::uint64_t n = 1) {
    const std::uint64_t now = spent_.fetch_add(n) + n;
    if (now > cap_.load()) throw BudgetExceeded();
  }

  std::uint64_t spent() const { return spent_.load(); }
  std::uint64_t cap() const { return cap_.load(); }

 private:
  Budget() : cap_(env_cap()), spent_(0) {}

  // ZGRASS_BUDGET overrides the built-in default.
  static std::uint64_t env_cap() {
    if (const char* e = std::getenv("ZGRASS_BUDGET")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(e, &end, 10);
      if (end != e && v > 0) return v;
    }
    return kDefaultCap;
  }

  std::atomic<std::uint64_t> cap_;
  std::atomic<std::uint64_t> spent_;
};

inline void charge_budget(std::uint64_t n = 1) { Budget::instance().charge(n); }

// Scoped cap override; restores the previous cap and spend on exit.
class BudgetScope {
 public:
  explicit BudgetScope(std::uint64_t cap)
      : saved_cap_(Budget::instance().cap()), saved_spent_(Budget::instance().spent()) {
    Budget::instance().reset(cap);
  }
  ~BudgetScope() {
    Budget::instance().reset(saved_cap_);
    Budget::instance().charge(saved_spent_ <= saved_cap_ ? saved_spent_ : 0);
  }
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  std::uint64_t saved_cap_;
  std::uint64_t saved_spent_;
};

}  // namespace zgrass
