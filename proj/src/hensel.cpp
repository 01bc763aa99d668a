#include "psol/hensel.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "psol/errors.hpp"
#include "psol/modular.hpp"

namespace psol {

namespace {

void require_prime(const Integer& p) {
  if (!is_prime(p)) throw DomainError("p = " + to_string(p) + " is not prime");
}

std::uint64_t word(const Integer& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) throw DomainError(std::string(what) + " does not fit a machine word");
  return v.get_ui();
}

IntVector to_integers(std::span<const std::uint64_t> digits) {
  IntVector out;
  out.reserve(digits.size());
  for (auto d : digits) out.emplace_back(static_cast<unsigned long>(d));
  return out;
}

void check_minor_columns(const MultilinearSystem& system, std::span<const std::size_t> columns) {
  if (columns.size() != system.equation_count()) {
    throw DomainError("minor needs " + std::to_string(system.equation_count()) + " columns, got " +
                      std::to_string(columns.size()));
  }
  std::set<std::size_t> seen;
  for (auto c : columns) {
    if (c >= system.unknown_count()) throw DomainError("minor column " + std::to_string(c) + " out of range");
    if (!seen.insert(c).second) throw DomainError("minor column " + std::to_string(c) + " repeated");
  }
}

bool certified(const IntMatrix& jacobian, std::span<const std::size_t> columns, const Integer& p,
               unsigned sigma) {
  const auto v = valuation(determinant(jacobian.select_columns(columns)), p);
  return v && *v == sigma - 1;
}

std::vector<IntVector> lift_step_with(const MultilinearSystem& system, const JacobianForms& jacobian,
                                      const LiftState& state, const EnumerationOptions& options) {
  if (state.sigma < 1) throw DomainError("sigma must be at least 1");
  if (state.residues.size() != system.unknown_count()) {
    throw DomainError("residue vector has length " + std::to_string(state.residues.size()) +
                      ", expected m*s = " + std::to_string(system.unknown_count()));
  }
  check_minor_columns(system, state.minor_columns);
  const Integer& p = state.p;
  const Integer q = ipow(p, state.level());
  const Integer next_q = q * p;

  IntVector a;
  a.reserve(state.residues.size());
  for (const auto& r : state.residues) a.push_back(mod_floor(r, q));

  IntVector phi = system.evaluate(a);
  for (auto& v : phi) {
    if (!mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t())) {
      throw DomainError("input is not a zero of the system mod p^" + std::to_string(state.level()));
    }
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
  }
  const IntMatrix jac = jacobian.evaluate(a);
  if (!certified(jac, state.minor_columns, p, state.sigma)) {
    throw DomainError("minor on the given columns does not have determinant valuation sigma - 1 = " +
                      std::to_string(state.sigma - 1));
  }

  std::vector<bool> in_minor(system.unknown_count(), false);
  for (auto c : state.minor_columns) in_minor[c] = true;
  std::vector<std::size_t> free_columns;
  for (std::size_t c = 0; c < system.unknown_count(); ++c) {
    if (!in_minor[c]) free_columns.push_back(c);
  }

  const LocalSmithForm smith(jac.select_columns(state.minor_columns), p, state.sigma);
  const Integer unit_scale = ipow(p, state.sigma - 1);
  const Integer shift = ipow(p, state.sigma + state.nu);
  const EnumerationPlan plan =
      plan_enumeration(free_columns.size(), word(p, "p"), options.budget, "lift step");

  std::vector<IntVector> out;
  IntVector rhs(system.equation_count());
  IntVector x(system.unknown_count());
  enumerate_partitioned<int>(plan, 1, [&](int&, std::span<const std::uint64_t> y, std::uint64_t) {
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      Integer acc = phi[k];
      for (std::size_t f = 0; f < free_columns.size(); ++f) {
        acc += jac(k, free_columns[f]) * static_cast<unsigned long>(y[f]);
      }
      rhs[k] = -unit_scale * acc;
    }
    const auto solutions = smith.solve(rhs).enumerate(options.budget);
    for (const auto& xc : solutions) {
      for (std::size_t k = 0; k < state.minor_columns.size(); ++k) x[state.minor_columns[k]] = xc[k];
      for (std::size_t f = 0; f < free_columns.size(); ++f) {
        x[free_columns[f]] = unit_scale * static_cast<unsigned long>(y[f]);
      }
      IntVector next(a.size());
      for (std::size_t c = 0; c < a.size(); ++c) next[c] = mod_floor(a[c] + shift * x[c], next_q);
      out.push_back(std::move(next));
    }
  });

  for (const auto& v : out) {
    for (const auto& value : system.evaluate(v)) {
      if (!mpz_divisible_p(value.get_mpz_t(), next_q.get_mpz_t())) {
        throw InternalError("lift step produced a vector that is not a zero mod p^" +
                            std::to_string(state.level() + 1));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const IntVector& l, const IntVector& r) { return colex_less(l, r); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

RankCheck singular_rank_check(const MultilinearSystem& system, std::span<const Integer> point,
                              const Integer& p) {
  require_prime(p);
  RankCheck out;
  out.required = system.equation_count();
  out.rank = rank_mod(jacobian_at(system, point).matrix, p);
  if (system.unknown_count() < system.equation_count()) {
    out.singular = true;
    out.note = "structurally singular: m*s = " + std::to_string(system.unknown_count()) + " < R*r = " +
               std::to_string(system.equation_count()) + ", so the rank can never reach R*r";
    return out;
  }
  out.singular = out.rank < out.required;
  return out;
}

std::optional<std::vector<std::size_t>> find_minor_columns(const IntMatrix& jacobian, const Integer& p,
                                                           unsigned sigma) {
  const std::size_t k = jacobian.rows();
  const std::size_t n = jacobian.cols();
  if (k > n) return std::nullopt;
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  for (;;) {
    if (certified(jacobian, cols, p, sigma)) return cols;
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return std::nullopt;
    ++cols[i - 1];
    for (std::size_t t = i; t < k; ++t) cols[t] = cols[t - 1] + 1;
  }
}

std::vector<SeedPoint> find_seeds(const MultilinearSystem& system, const Integer& p, unsigned sigma_max,
                                  const EnumerationOptions& options) {
  require_prime(p);
  if (sigma_max < 1) throw DomainError("sigma_max must be at least 1");
  if (system.unknown_count() < system.equation_count()) {
    throw DomainError("seed search needs m*s >= R*r, got " + std::to_string(system.unknown_count()) + " < " +
                      std::to_string(system.equation_count()));
  }
  const JacobianForms jacobian(system);
  for (unsigned sigma = 1; sigma <= sigma_max; ++sigma) {
    const unsigned level = 2 * sigma - 1;
    const auto q = bounded_power(word(p, "p"), level, options.budget);
    if (!q) throw BudgetExceeded("seed search: modulus p^" + std::to_string(level) + " exceeds the budget");
    const EnumerationPlan plan = plan_enumeration(system.unknown_count(), *q, options.budget, "seed search");
    const ModularEvaluator eval(system.components(), *q);

    auto parts = enumerate_partitioned<std::vector<SeedPoint>>(
        plan, options.workers, [&](std::vector<SeedPoint>& found, std::span<const std::uint64_t> x, std::uint64_t) {
          if (!eval.all_vanish(x)) return;
          IntVector point = to_integers(x);
          auto cols = find_minor_columns(jacobian.evaluate(point), p, sigma);
          if (cols) found.push_back({p, sigma, std::move(point), std::move(*cols)});
        });
    std::vector<SeedPoint> seeds;
    for (auto& part : parts) {
      for (auto& s : part) seeds.push_back(std::move(s));
    }
    if (!seeds.empty()) return seeds;
  }
  return {};
}

std::vector<IntVector> lift_step(const MultilinearSystem& system, const LiftState& state,
                                 const EnumerationOptions& options) {
  require_prime(state.p);
  return lift_step_with(system, JacobianForms(system), state, options);
}

PAdicPoint lift_to_precision(const MultilinearSystem& system, const SeedPoint& seed, unsigned precision,
                             const EnumerationOptions& options) {
  require_prime(seed.p);
  if (precision < seed.precision()) {
    throw DomainError("target precision " + std::to_string(precision) + " is below the seed precision 2*sigma-1 = " +
                      std::to_string(seed.precision()));
  }
  const JacobianForms jacobian(system);
  LiftState state{seed.p, seed.sigma, 0, seed.residues, seed.minor_columns};
  if (precision == seed.precision()) {
    // Validates the seed through a dry step's preconditions.
    check_minor_columns(system, seed.minor_columns);
    const Integer q = ipow(seed.p, seed.precision());
    for (const auto& v : system.evaluate(seed.residues)) {
      if (!mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t())) throw DomainError("seed is not a zero of the system");
    }
    if (!certified(jacobian.evaluate(seed.residues), seed.minor_columns, seed.p, seed.sigma)) {
      throw DomainError("seed minor certificate does not hold");
    }
  }
  while (state.level() < precision) {
    auto extensions = lift_step_with(system, jacobian, state, options);
    if (extensions.empty()) throw InternalError("certified lift step returned no extension");
    state.residues = std::move(extensions.front());
    ++state.nu;
  }

  PAdicPoint out{seed.p, seed.sigma, precision, state.residues, seed.minor_columns, seed};
  const Integer q = ipow(seed.p, precision);
  for (auto& r : out.residues) r = mod_floor(r, q);
  for (const auto& v : system.evaluate(out.residues)) {
    if (!mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t())) throw InternalError("lifted point fails re-evaluation");
  }
  const Integer base = ipow(seed.p, seed.sigma);
  for (std::size_t c = 0; c < out.residues.size(); ++c) {
    if (mod_floor(out.residues[c] - seed.residues[c], base) != 0) {
      throw InternalError("lifted point does not reduce to its seed mod p^sigma");
    }
  }
  return out;
}

FormSystem restrict_to_subspace(const FormSystem& fs, const IntMatrix& basis) {
  const std::size_t s = fs.variables();
  if (basis.rows() != s) {
    throw DomainError("basis has " + std::to_string(basis.rows()) + " rows, expected s = " + std::to_string(s));
  }
  const std::size_t dim = basis.cols();
  if (dim < 1 || dim > s) throw DomainError("basis must have between 1 and s columns");

  std::vector<Polynomial> linear;
  linear.reserve(s);
  for (std::size_t n = 0; n < s; ++n) {
    std::map<Exponents, Integer> terms;
    for (std::size_t k = 0; k < dim; ++k) {
      Exponents e(dim, 0);
      e[k] = 1;
      terms[e] += basis(n, k);
    }
    linear.emplace_back(dim, terms);
  }
  std::map<std::pair<std::size_t, unsigned>, Polynomial> powers;
  const auto power = [&](std::size_t n, unsigned e) -> const Polynomial& {
    auto it = powers.find({n, e});
    if (it == powers.end()) it = powers.emplace(std::make_pair(n, e), linear[n].pow(e)).first;
    return it->second;
  };

  std::vector<Polynomial> forms;
  for (const auto& f : fs.forms()) {
    Polynomial g(dim);
    for (const auto& mono : f.terms()) {
      Polynomial term = Polynomial::constant(dim, mono.coefficient);
      for (std::size_t n = 0; n < s; ++n) {
        if (mono.exponents[n] != 0) term = term * power(n, mono.exponents[n]);
      }
      g = g + term;
    }
    forms.push_back(std::move(g));
  }
  return FormSystem(fs.degree(), dim, std::move(forms));
}

std::optional<SliceSearchResult> search_nonsingular_slice(const FormSystem& fs, std::size_t m,
                                                          const Integer& p, std::size_t dim,
                                                          unsigned tries, std::uint64_t rng_seed,
                                                          long entry_bound,
                                                          const EnumerationOptions& options) {
  require_prime(p);
  if (entry_bound < 1) throw DomainError("entry bound must be positive");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<long> entry(-entry_bound, entry_bound);
  for (unsigned attempt = 1; attempt <= tries; ++attempt) {
    IntMatrix basis(fs.variables(), dim);
    for (std::size_t r = 0; r < basis.rows(); ++r) {
      for (std::size_t c = 0; c < dim; ++c) basis(r, c) = entry(rng);
    }
    // Only injective slices are hyperplane sections of the full space.
    if (!matrix_order(basis.transposed(), p)) continue;
    FormSystem restricted = restrict_to_subspace(fs, basis);
    const MultilinearSystem expanded = expand_multilinear(restricted, m);
    if (expanded.unknown_count() < expanded.equation_count()) continue;
    auto seeds = find_seeds(expanded, p, 1, options);
    if (!seeds.empty()) return SliceSearchResult{std::move(basis), std::move(restricted), std::move(seeds), attempt};
  }
  return std::nullopt;
}

}  // namespace psol
