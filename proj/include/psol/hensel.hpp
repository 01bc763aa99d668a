#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psol/bigint.hpp"
#include "psol/enumerate.hpp"
#include "psol/forms.hpp"
#include "psol/matrix.hpp"

namespace psol {

/// An approximate zero mod p^{2 sigma - 1} whose Jacobian minor on
/// `minor_columns` has determinant of p-adic valuation exactly sigma - 1.
struct SeedPoint {
  Integer p;
  unsigned sigma = 1;
  IntVector residues;
  std::vector<std::size_t> minor_columns;

  unsigned precision() const { return 2 * sigma - 1; }
};

/// A zero mod p^precision obtained by lifting `seed`.
struct PAdicPoint {
  Integer p;
  unsigned sigma = 1;
  unsigned precision = 1;
  IntVector residues;
  std::vector<std::size_t> minor_columns;
  SeedPoint seed;
};

struct RankCheck {
  bool singular = true;
  std::size_t rank = 0;
  std::size_t required = 0;
  std::string note;
};

RankCheck singular_rank_check(const MultilinearSystem& system, std::span<const Integer> point,
                              const Integer& p);

/// Lexicographically smallest set of Rr columns of `jacobian` whose minor has
/// determinant of valuation exactly sigma - 1.
std::optional<std::vector<std::size_t>> find_minor_columns(const IntMatrix& jacobian, const Integer& p,
                                                           unsigned sigma);

/// For sigma = 1..sigma_max, enumerates all residue vectors mod p^{2 sigma - 1}
/// satisfying the seed conditions and returns those of the first sigma that
/// admits any, in enumeration order.
std::vector<SeedPoint> find_seeds(const MultilinearSystem& system, const Integer& p, unsigned sigma_max,
                                  const EnumerationOptions& options = {});

/// A partial lift: residues mod p^{2 sigma - 1 + nu}.
struct LiftState {
  Integer p;
  unsigned sigma = 1;
  unsigned nu = 0;
  IntVector residues;
  std::vector<std::size_t> minor_columns;

  unsigned level() const { return 2 * sigma - 1 + nu; }
};

/// All extensions a + p^{sigma+nu} x mod p^{2 sigma + nu}, with x free mod
/// p^sigma on the minor columns and x = p^{sigma-1} y elsewhere, that solve
/// the system mod p^{2 sigma + nu}. Sorted in enumeration order.
std::vector<IntVector> lift_step(const MultilinearSystem& system, const LiftState& state,
                                 const EnumerationOptions& options = {});

/// Repeats lift_step from the seed up to precision N, keeping the first
/// extension in enumeration order at each stage.
PAdicPoint lift_to_precision(const MultilinearSystem& system, const SeedPoint& seed, unsigned precision,
                             const EnumerationOptions& options = {});

/// The system G(y) = F(basis * y) for an s x s' integer basis.
FormSystem restrict_to_subspace(const FormSystem& fs, const IntMatrix& basis);

struct SliceSearchResult {
  IntMatrix basis;
  FormSystem restricted;
  std::vector<SeedPoint> seeds;
  unsigned attempts = 0;
};

/// Tries random integral slices of dimension `dim` (entries in
/// [-entry_bound, entry_bound]) until the restricted system has a seed at
/// sigma = 1 for block count m. Deterministic in rng_seed.
std::optional<SliceSearchResult> search_nonsingular_slice(const FormSystem& fs, std::size_t m,
                                                          const Integer& p, std::size_t dim,
                                                          unsigned tries, std::uint64_t rng_seed,
                                                          long entry_bound,
                                                          const EnumerationOptions& options = {});

}  // namespace psol
