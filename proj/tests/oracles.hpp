#pragma once

// Independent reference implementations used only by the tests. None of
// these go through the library's multilinear expansion or its enumeration
// engine: linear-space conditions are checked by substituting x = sum t_i x_i
// into F with t kept symbolic.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "psol/bigint.hpp"
#include "psol/forms.hpp"
#include "psol/matrix.hpp"

namespace oracle {

using psol::Integer;
using psol::IntVector;

/// Polynomial in the m parameters t, as exponent vector -> coefficient.
using TPoly = std::map<std::vector<unsigned>, Integer>;

inline TPoly tmul(const TPoly& a, const TPoly& b) {
  TPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  }
  return out;
}

/// F(sum_i t_i x_i) with x the block-major vector of m blocks.
inline TPoly substitute(const psol::Polynomial& f, std::size_t m, std::span<const Integer> x) {
  const std::size_t s = f.variables();
  std::vector<TPoly> linear(s);
  for (std::size_t n = 0; n < s; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<unsigned> e(m, 0);
      e[i] = 1;
      if (x[i * s + n] != 0) linear[n][e] += x[i * s + n];
    }
  }
  TPoly total;
  for (const auto& mono : f.terms()) {
    TPoly term{{std::vector<unsigned>(m, 0), mono.coefficient}};
    for (std::size_t n = 0; n < s; ++n) {
      for (unsigned k = 0; k < mono.exponents[n]; ++k) term = tmul(term, linear[n]);
    }
    for (const auto& [e, c] : term) total[e] += c;
  }
  return total;
}

inline bool all_divisible(const TPoly& poly, const Integer& q) {
  for (const auto& [e, c] : poly) {
    if (!mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) return false;
  }
  return true;
}

/// True when x is a linear-space zero of every form mod q.
inline bool is_linear_zero(const psol::FormSystem& fs, std::size_t m, std::span<const Integer> x, const Integer& q) {
  for (const auto& f : fs.forms()) {
    if (!all_divisible(substitute(f, m, x), q)) return false;
  }
  return true;
}

/// Calls visit(x) for every x in {0..radix-1}^dim.
template <typename Visit>
void for_each_vector(std::size_t dim, const Integer& radix, Visit visit) {
  IntVector x(dim, 0);
  for (;;) {
    visit(static_cast<const IntVector&>(x));
    std::size_t k = 0;
    while (k < dim) {
      if (++x[k] < radix) break;
      x[k] = 0;
      ++k;
    }
    if (k == dim) return;
  }
}

inline Integer gamma_by_substitution(const psol::FormSystem& fs, std::size_t m, const Integer& p, unsigned l) {
  const Integer q = psol::ipow(p, l);
  Integer count = 0;
  for_each_vector(m * fs.variables(), q, [&](const IntVector& x) {
    if (is_linear_zero(fs, m, x, q)) ++count;
  });
  return count;
}

inline Integer cofactor_det(const psol::IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    psol::IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0, kk = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, kk++) = a(r, k);
      }
    }
    const Integer term = a(0, c) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

/// Calls visit(cols) for every k-subset of {0..n-1} in lexicographic order;
/// stops when visit returns true.
template <typename Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit visit) {
  std::vector<std::size_t> cols;
  const auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (cols.size() == k) return visit(static_cast<const std::vector<std::size_t>&>(cols));
    for (std::size_t c = start; c < n; ++c) {
      cols.push_back(c);
      if (self(self, c + 1)) return true;
      cols.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

/// 1 + least valuation over all maximal minors; 0 encodes infinity.
inline unsigned long order_by_minors(const psol::IntMatrix& a, const Integer& p) {
  std::optional<unsigned long> best;
  for_each_subset(a.cols(), a.rows(), [&](const std::vector<std::size_t>& cols) {
    const auto v = psol::valuation(cofactor_det(a.select_columns(cols)), p);
    if (v && (!best || *v < *best)) best = v;
    return false;
  });
  return best ? *best + 1 : 0;
}

/// Jacobian entry ((rho, j), (i, n)) as the t^j coefficient of
/// t_i (d_n F)(sum t_k x_k), with d_n F differentiated here independently.
inline psol::IntMatrix jacobian_by_substitution(const psol::FormSystem& fs, std::size_t m,
                                                std::span<const Integer> x) {
  const std::size_t s = fs.variables();
  const auto indices = psol::multi_index_set(m, fs.degree());
  psol::IntMatrix out(fs.form_count() * indices.size(), m * s);
  for (std::size_t rho = 0; rho < fs.form_count(); ++rho) {
    for (std::size_t n = 0; n < s; ++n) {
      std::map<psol::Exponents, Integer> deriv;
      for (const auto& mono : fs.form(rho).terms()) {
        if (mono.exponents[n] == 0) continue;
        auto e = mono.exponents;
        --e[n];
        deriv[e] += mono.coefficient * mono.exponents[n];
      }
      const TPoly g = substitute(psol::Polynomial(s, deriv), m, x);
      for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [e, c] : g) {
          auto shifted = e;
          ++shifted[i];
          for (std::size_t jx = 0; jx < indices.size(); ++jx) {
            if (indices[jx].multiplicities == shifted) out(rho * indices.size() + jx, i * s + n) += c;
          }
        }
      }
    }
  }
  return out;
}

struct NaiveSeed {
  IntVector residues;
  std::vector<std::size_t> columns;
};

/// Seeds at exactly this sigma, by direct filtering of every residue vector.
inline std::vector<NaiveSeed> naive_seeds(const psol::FormSystem& fs, std::size_t m, const Integer& p,
                                          unsigned sigma) {
  const Integer q = psol::ipow(p, 2 * sigma - 1);
  const std::size_t rr = fs.form_count() * psol::multi_index_set(m, fs.degree()).size();
  std::vector<NaiveSeed> out;
  for_each_vector(m * fs.variables(), q, [&](const IntVector& x) {
    if (!is_linear_zero(fs, m, x, q)) return;
    const auto jac = jacobian_by_substitution(fs, m, x);
    for_each_subset(jac.cols(), rr, [&](const std::vector<std::size_t>& cols) {
      const auto v = psol::valuation(cofactor_det(jac.select_columns(cols)), p);
      if (v && *v == sigma - 1) {
        out.push_back({x, cols});
        return true;
      }
      return false;
    });
  });
  return out;
}

/// F(sum_i t_i x_i) == sum_j (prod_k t_{j_k}) Phi_j(x) for every form.
inline bool expansion_identity_holds(const psol::MultilinearSystem& sys, std::span<const Integer> t,
                                     std::span<const Integer> x) {
  const std::size_t s = sys.variables();
  IntVector combined(s, 0);
  for (std::size_t i = 0; i < sys.blocks(); ++i) {
    for (std::size_t n = 0; n < s; ++n) combined[n] += t[i] * x[i * s + n];
  }
  const IntVector direct = sys.source().evaluate(combined);
  const IntVector phi = sys.evaluate(x);
  for (std::size_t rho = 0; rho < sys.form_count(); ++rho) {
    Integer total = 0;
    for (std::size_t jx = 0; jx < sys.index_count(); ++jx) {
      Integer monomial = 1;
      for (unsigned e : sys.indices()[jx].entries) monomial *= t[e];
      total += monomial * phi[sys.row(rho, jx)];
    }
    if (total != direct[rho]) return false;
  }
  return true;
}

inline psol::FormSystem random_system(std::mt19937_64& rng, unsigned d, std::size_t s, std::size_t forms,
                                      long coeff_bound, unsigned max_terms) {
  std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
  std::uniform_int_distribution<std::size_t> var(0, s - 1);
  std::uniform_int_distribution<unsigned> terms(1, max_terms);
  std::vector<psol::Polynomial> polys;
  for (std::size_t rho = 0; rho < forms; ++rho) {
    std::map<psol::Exponents, Integer> t;
    const unsigned count = terms(rng);
    for (unsigned k = 0; k < count; ++k) {
      psol::Exponents e(s, 0);
      for (unsigned deg = 0; deg < d; ++deg) ++e[var(rng)];
      t[e] += coeff(rng);
    }
    polys.emplace_back(s, t);
  }
  return psol::FormSystem(d, s, std::move(polys));
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntVector out;
  for (std::size_t k = 0; k < n; ++k) out.emplace_back(dist(rng));
  return out;
}

inline psol::FormSystem single_form(unsigned d, std::size_t s,
                                    std::vector<std::pair<psol::Exponents, long>> terms) {
  std::map<psol::Exponents, Integer> t;
  for (auto& [e, c] : terms) t[e] += c;
  return psol::FormSystem(d, s, {psol::Polynomial(s, t)});
}

inline psol::FormSystem three_cubes() { return single_form(3, 3, {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}}); }
inline psol::FormSystem cube_minus_two_cubes() { return single_form(3, 2, {{{3, 0}, 1}, {{0, 3}, -2}}); }
inline psol::FormSystem fermat_cubic4() {
  return single_form(3, 4, {{{3, 0, 0, 0}, 1}, {{0, 3, 0, 0}, 1}, {{0, 0, 3, 0}, 1}, {{0, 0, 0, 3}, 1}});
}

inline IntVector ints(std::initializer_list<long> values) {
  IntVector out;
  for (long v : values) out.emplace_back(v);
  return out;
}

}  // namespace oracle
