#include "psol/counting.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "psol/errors.hpp"
#include "psol/modular.hpp"

namespace psol {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t small_prime(const Integer& p) {
  if (!is_prime(p)) throw DomainError("p = " + to_string(p) + " is not prime");
  if (!p.fits_ulong_p()) throw BudgetExceeded("p = " + to_string(p) + " is too large to enumerate");
  return p.get_ui();
}

std::uint64_t modulus_within(std::uint64_t p, unsigned level, std::uint64_t budget) {
  const auto q = bounded_power(p, level, budget);
  if (!q) {
    throw BudgetExceeded("modulus p^" + std::to_string(level) + " exceeds the budget of " + std::to_string(budget));
  }
  return *q;
}

Integer sum_counts(std::span<const std::uint64_t> parts) {
  Integer total = 0;
  for (auto c : parts) total += static_cast<unsigned long>(c);
  return total;
}

}  // namespace

CountReport gamma_m(const MultilinearSystem& system, const Integer& p, unsigned l,
                    const EnumerationOptions& options) {
  const auto start = Clock::now();
  const std::uint64_t prime = small_prime(p);
  CountReport report;
  report.quantity = "gamma_m";
  report.parameters = {{"p", prime}, {"l", l}, {"m", system.blocks()}};
  if (l == 0) {
    report.count = 1;
    report.states = 1;
    return report;
  }
  const std::uint64_t q = modulus_within(prime, l, options.budget);
  const EnumerationPlan plan = plan_enumeration(system.unknown_count(), q, options.budget, "gamma_m");
  const ModularEvaluator eval(system.components(), q);
  const auto parts = enumerate_partitioned<std::uint64_t>(
      plan, options.workers, [&](std::uint64_t& count, std::span<const std::uint64_t> x, std::uint64_t) {
        if (eval.all_vanish(x)) ++count;
      });
  report.count = sum_counts(parts);
  report.states = static_cast<unsigned long>(plan.total);
  report.wall_seconds = seconds_since(start);
  return report;
}

CountReport gamma_m(const FormSystem& fs, std::size_t m, const Integer& p, unsigned l,
                    const EnumerationOptions& options) {
  return gamma_m(expand_multilinear(fs, m), p, l, options);
}

CountReport count_M(const MultilinearSystem& system, const Integer& p, unsigned sigma, unsigned nu,
                    std::span<const std::size_t> minor_columns, const EnumerationOptions& options) {
  const auto start = Clock::now();
  const std::uint64_t prime = small_prime(p);
  if (sigma < 1) throw DomainError("sigma must be at least 1");
  if (minor_columns.size() != system.equation_count()) {
    throw DomainError("minor needs R*r = " + std::to_string(system.equation_count()) + " columns, got " +
                      std::to_string(minor_columns.size()));
  }
  std::vector<bool> in_minor(system.unknown_count(), false);
  for (auto c : minor_columns) {
    if (c >= system.unknown_count() || in_minor[c]) throw DomainError("invalid or repeated minor column");
    in_minor[c] = true;
  }
  const unsigned level = 2 * sigma - 1 + nu;
  const std::uint64_t q = modulus_within(prime, level, options.budget);
  const std::uint64_t scale = *small_power(prime, sigma - 1);
  const EnumerationPlan plan = plan_enumeration(system.unknown_count(), q, options.budget, "count_M");
  const ModularEvaluator eval(system.components(), q);
  const JacobianForms jacobian(system);
  const std::vector<std::size_t> columns(minor_columns.begin(), minor_columns.end());

  auto parts = enumerate_partitioned<std::set<std::vector<std::uint64_t>>>(
      plan, options.workers,
      [&](std::set<std::vector<std::uint64_t>>& classes, std::span<const std::uint64_t> x, std::uint64_t) {
        if (!eval.all_vanish(x)) return;
        IntVector point;
        point.reserve(x.size());
        for (auto v : x) point.emplace_back(static_cast<unsigned long>(v));
        const auto v = valuation(determinant(jacobian.evaluate(point).select_columns(columns)), p);
        if (!v || *v != sigma - 1) return;
        std::vector<std::uint64_t> key(x.begin(), x.end());
        for (std::size_t c = 0; c < key.size(); ++c) {
          if (in_minor[c]) key[c] = mul_mod(key[c], scale, q);
        }
        classes.insert(std::move(key));
      });
  std::set<std::vector<std::uint64_t>> merged;
  for (auto& part : parts) merged.merge(part);

  CountReport report;
  report.quantity = "M";
  report.parameters = {{"p", prime}, {"sigma", sigma}, {"nu", nu}, {"m", system.blocks()},
                       {"minor_columns", columns}};
  report.count = static_cast<unsigned long>(merged.size());
  report.states = static_cast<unsigned long>(plan.total);
  report.wall_seconds = seconds_since(start);
  return report;
}

LiftingBoundReport verify_lifting_bound(const MultilinearSystem& system, const Integer& p, unsigned sigma,
                                        unsigned nu_max, std::span<const std::size_t> minor_columns,
                                        const EnumerationOptions& options) {
  if (system.unknown_count() < system.equation_count()) {
    throw DomainError("the lifting bound needs m*s >= R*r");
  }
  LiftingBoundReport out;
  out.p = p;
  out.sigma = sigma;
  out.minor_columns.assign(minor_columns.begin(), minor_columns.end());
  const unsigned long excess = system.unknown_count() - system.equation_count();
  Integer base;
  for (unsigned nu = 0; nu <= nu_max; ++nu) {
    CountReport count;
    try {
      count = count_M(system, p, sigma, nu, minor_columns, options);
    } catch (const BudgetExceeded& e) {
      out.truncated = true;
      out.truncation_reason = e.what();
      break;
    }
    if (nu == 0) base = count.count;
    LiftingBoundRow row{nu, count.count, ipow(p, excess * nu) * base, false};
    row.holds = row.count >= row.bound;
    out.holds = out.holds && row.holds;
    out.rows.push_back(std::move(row));
  }
  return out;
}

CountReport count_rational_points(const FormSystem& fs, std::size_t m, std::uint64_t radius,
                                  const EnumerationOptions& options) {
  const auto start = Clock::now();
  const MultilinearSystem system = expand_multilinear(fs, m);
  if (radius > (std::uint64_t{1} << 40)) throw BudgetExceeded("box radius too large");
  const EnumerationPlan plan =
      plan_enumeration(system.unknown_count(), 2 * radius + 1, options.budget, "rational point count");
  const BoundedEvaluator fast(system.components(), radius);
  const auto offset = static_cast<std::int64_t>(radius);

  const auto parts = enumerate_partitioned<std::uint64_t>(
      plan, options.workers, [&](std::uint64_t& count, std::span<const std::uint64_t> digits, std::uint64_t) {
        thread_local std::vector<std::int64_t> x;
        x.resize(digits.size());
        for (std::size_t k = 0; k < digits.size(); ++k) x[k] = static_cast<std::int64_t>(digits[k]) - offset;
        bool zero;
        if (fast.fits()) {
          zero = fast.all_vanish(x);
        } else {
          IntVector point;
          for (auto v : x) point.emplace_back(static_cast<long>(v));
          const IntVector values = system.evaluate(point);
          zero = std::all_of(values.begin(), values.end(), [](const Integer& v) { return v == 0; });
        }
        if (zero) ++count;
      });

  CountReport report;
  report.quantity = "rational_points";
  report.parameters = {{"m", m}, {"P", radius}};
  report.count = sum_counts(parts);
  report.states = static_cast<unsigned long>(plan.total);
  report.wall_seconds = seconds_since(start);
  return report;
}

}  // namespace psol
