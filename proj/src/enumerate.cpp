#include "psol/enumerate.hpp"

#include <string>

#include "psol/bigint.hpp"
#include "psol/errors.hpp"

namespace psol {

EnumerationPlan plan_enumeration(std::size_t dimension, std::uint64_t radix, std::uint64_t budget,
                                 std::string_view what) {
  const auto total = bounded_power(radix, dimension, budget);
  if (!total) {
    const Integer states = ipow(Integer(static_cast<unsigned long>(radix)), dimension);
    throw BudgetExceeded(std::string(what) + ": " + to_string(states) + " states exceed the budget of " +
                         std::to_string(budget) + " (raise --budget to override)");
  }
  return {dimension, radix, *total};
}

}  // namespace psol
