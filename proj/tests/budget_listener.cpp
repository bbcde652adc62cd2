// Resets the global work budget before each test case so exhaustive checks
// in one case can never starve another.
#include <catch2/catch_amalgamated.hpp>

#include "zgrass/budget.hpp"

namespace {

class BudgetReset : public Catch::EventListenerBase {
 public:
  using Catch::EventListenerBase::EventListenerBase;
  void testCaseStarting(const Catch::TestCaseInfo&) override {
    zgrass::Budget::instance().reset(2'000'000'000ULL);
  }
};

CATCH_REGISTER_LISTENER(BudgetReset)

}  // namespace
