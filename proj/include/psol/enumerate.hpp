#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

namespace psol {

/// Default cap on enumerated states.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct EnumerationOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned workers = 1;
};

/// The box {0..radix-1}^dimension, walked in mixed-radix little-endian order
/// (coordinate 0 varies fastest).
struct EnumerationPlan {
  std::size_t dimension = 0;
  std::uint64_t radix = 1;
  std::uint64_t total = 1;
};

/// Throws BudgetExceeded when radix^dimension exceeds the budget.
EnumerationPlan plan_enumeration(std::size_t dimension, std::uint64_t radix, std::uint64_t budget,
                                 std::string_view what);

/// Splits the plan into `workers` contiguous index ranges and calls
/// visit(result, digits, index) for every state. Each range owns one Result;
/// results come back in range order so that merging them in sequence is
/// independent of the worker count.
template <typename Result, typename Visit>
std::vector<Result> enumerate_partitioned(const EnumerationPlan& plan, unsigned workers, Visit visit) {
  const std::uint64_t parts = std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(plan.total, 1));
  std::vector<Result> results(parts);
  std::vector<std::exception_ptr> errors(parts);

  const auto run_range = [&](std::uint64_t part) {
    try {
      const std::uint64_t begin = plan.total * part / parts;
      const std::uint64_t end = plan.total * (part + 1) / parts;
      std::vector<std::uint64_t> digits(plan.dimension, 0);
      std::uint64_t rest = begin;
      for (auto& dgt : digits) {
        dgt = rest % plan.radix;
        rest /= plan.radix;
      }
      for (std::uint64_t index = begin; index < end; ++index) {
        visit(results[part], std::span<const std::uint64_t>(digits), index);
        for (auto& dgt : digits) {
          if (++dgt < plan.radix) break;
          dgt = 0;
        }
      }
    } catch (...) {
      errors[part] = std::current_exception();
    }
  };

  if (parts == 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(parts);
    for (std::uint64_t part = 0; part < parts; ++part) threads.emplace_back(run_range, part);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace psol
