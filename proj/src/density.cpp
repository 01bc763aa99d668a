#include "psol/density.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <unordered_map>

#include "psol/errors.hpp"
#include "psol/modular.hpp"

namespace psol {

DensityTrace chi_trace(const FormSystem& fs, std::size_t m, const Integer& p, unsigned i_max,
                       const EnumerationOptions& options) {
  const MultilinearSystem system = expand_multilinear(fs, m);
  const long excess = static_cast<long>(system.unknown_count()) - static_cast<long>(system.equation_count());
  DensityTrace out;
  out.p = p;
  out.m = m;
  for (unsigned i = 0; i <= i_max; ++i) {
    CountReport count;
    try {
      count = gamma_m(system, p, i, options);
    } catch (const BudgetExceeded& e) {
      out.truncated = true;
      out.truncation_reason = e.what();
      break;
    }
    out.gamma.push_back(count.count);
    out.values.push_back(Rational(count.count) * rational_power(p, -excess * static_cast<long>(i)));
    out.values.back().canonicalize();
  }
  const std::size_t n = out.values.size();
  out.converged = n >= 2 && out.values[n - 1] == out.values[n - 2];
  return out;
}

namespace {

// Histogram of the value vectors (Phi(x) mod q), keyed by their base-q code.
std::map<std::uint64_t, std::uint64_t> value_histogram(const MultilinearSystem& system, std::uint64_t q,
                                                       const EnumerationOptions& options) {
  const EnumerationPlan plan = plan_enumeration(system.unknown_count(), q, options.budget, "exponential sum");
  const ModularEvaluator eval(system.components(), q);
  using Local = std::unordered_map<std::uint64_t, std::uint64_t>;
  auto parts = enumerate_partitioned<Local>(plan, options.workers,
                                            [&](Local& hist, std::span<const std::uint64_t> x, std::uint64_t) {
                                              thread_local std::vector<std::uint64_t> values;
                                              values.resize(eval.size());
                                              eval.evaluate(x, values);
                                              std::uint64_t code = 0;
                                              for (std::size_t k = values.size(); k-- > 0;) code = code * q + values[k];
                                              ++hist[code];
                                            });
  std::map<std::uint64_t, std::uint64_t> merged;
  for (const auto& part : parts) {
    for (const auto& [code, n] : part) merged[code] += n;
  }
  return merged;
}

}  // namespace

ExpSumResult chi_expsum_partial(const FormSystem& fs, std::size_t m, const Integer& p, unsigned L,
                                ExpSumMode mode, const EnumerationOptions& options) {
  if (!is_prime(p)) throw DomainError("p = " + to_string(p) + " is not prime");
  const MultilinearSystem system = expand_multilinear(fs, m);
  const std::size_t ms = system.unknown_count();
  const std::size_t rr = system.equation_count();
  ExpSumResult out;
  out.mode = mode;
  out.p = p;
  out.m = m;
  out.levels = L;
  out.states = 0;

  if (mode == ExpSumMode::exact) {
    // Full u-sums are p^{l Rr} [Phi = 0 mod p^l]; the primitive part is the
    // full sum at level l minus the p-divisible u, a full sum at level l - 1.
    out.exact_terms.emplace_back(1);
    out.exact_value = 1;
    Integer previous = 1;
    for (unsigned l = 1; l <= L; ++l) {
      const CountReport g = gamma_m(system, p, l, options);
      out.states += g.states;
      const Integer full = ipow(p, l * rr) * g.count;
      const Integer divisible = ipow(p, (l - 1) * rr) * ipow(p, ms) * previous;
      Rational term = Rational(full - divisible) * rational_power(p, -static_cast<long>(l * ms));
      term.canonicalize();
      out.exact_terms.push_back(term);
      out.exact_value += term;
      previous = g.count;
    }
    out.exact_value.canonicalize();
    return out;
  }

  if (!p.fits_ulong_p()) throw BudgetExceeded("p too large to enumerate");
  const std::uint64_t prime = p.get_ui();
  out.tolerance = kExpSumTolerance;
  out.float_terms.push_back(1.0);
  long double total = 1.0L;
  for (unsigned l = 1; l <= L; ++l) {
    if (!bounded_power(prime, static_cast<unsigned long>(l) * (ms + rr), options.budget)) {
      throw BudgetExceeded("exponential sum at level " + std::to_string(l) + " needs p^{l(ms+Rr)} states above the budget of " +
                           std::to_string(options.budget));
    }
    const std::uint64_t q = *small_power(prime, l);
    const auto histogram = value_histogram(system, q, options);
    out.states += static_cast<unsigned long>(*bounded_power(q, ms, options.budget));

    std::vector<std::complex<long double>> roots(q);
    for (std::uint64_t k = 0; k < q; ++k) {
      const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / q;
      roots[k] = {std::cos(angle), std::sin(angle)};
    }
    const std::uint64_t u_count = *bounded_power(q, rr, options.budget);
    std::vector<std::uint64_t> values(rr);
    std::vector<std::uint64_t> u(rr);
    std::complex<long double> level_sum = 0;
    for (const auto& [code, weight] : histogram) {
      std::uint64_t rest = code;
      for (auto& v : values) {
        v = rest % q;
        rest /= q;
      }
      std::complex<long double> inner = 0;
      std::fill(u.begin(), u.end(), 0);
      for (std::uint64_t idx = 0; idx < u_count; ++idx) {
        bool primitive = false;
        std::uint64_t phase = 0;
        for (std::size_t k = 0; k < rr; ++k) {
          if (u[k] % prime != 0) primitive = true;
          phase = (phase + mul_mod(u[k], values[k], q)) % q;
        }
        if (primitive) inner += roots[phase];
        for (auto& dgt : u) {
          if (++dgt < q) break;
          dgt = 0;
        }
      }
      out.states += static_cast<unsigned long>(u_count);
      level_sum += static_cast<long double>(weight) * inner;
    }
    const long double term = level_sum.real() / std::pow(static_cast<long double>(prime), static_cast<long double>(l * ms));
    out.float_terms.push_back(static_cast<double>(term));
    total += term;
  }
  out.float_value = static_cast<double>(total);
  return out;
}

Rational kappa_bound(const Integer& p, unsigned sigma, std::size_t ms, std::size_t rr) {
  if (ms < rr) throw DomainError("kappa needs m*s >= R*r");
  if (sigma < 1) throw DomainError("sigma must be at least 1");
  const long exponent = (1 - 2 * static_cast<long>(sigma)) * static_cast<long>(ms - rr);
  return rational_power(p, exponent);
}

std::vector<KnownConstant> known_constants() {
  return {{"gamma3_star_2_upper", "gamma_3^*(2) <= 131: pairs of cubic forms", 3, 2, Integer(131)}};
}

BoundsSheet bounds_sheet(unsigned d, unsigned R, unsigned m) {
  if (d < 1 || R < 1 || m < 1) throw DomainError("bounds need d, R, m >= 1");
  // (R d^2)^{2^{d-1}} has millions of digits beyond this.
  if (d > 20) throw DomainError("bounds are limited to d <= 20");
  BoundsSheet out;
  out.d = d;
  out.R = R;
  out.m = m;
  out.r = binomial(d - 1 + m, d);
  const Integer lead = ipow(Integer(2), d - 1) * (d - 1) * R;
  out.birch = lead * (R + 1) + 1;
  out.linear_spaces = 3 * lead * (R * out.r + 1) + 1;
  out.wooley = ipow(Integer(R) * d * d, ipow(Integer(2), d - 1).get_ui());
  out.schmidt_factor = lead;
  out.known = known_constants();
  out.schmidt_comparison = lead * out.wooley;
  for (const auto& k : out.known) {
    if (k.d == d && k.R == R && k.upper < out.wooley) out.schmidt_comparison_known = lead * k.upper;
  }
  return out;
}

}  // namespace psol
