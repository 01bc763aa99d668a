#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "psol/bigint.hpp"
#include "psol/enumerate.hpp"
#include "psol/forms.hpp"

namespace psol {

/// Result of an exhaustive count. `parameters` echoes the inputs.
struct CountReport {
  std::string quantity;
  nlohmann::ordered_json parameters;
  Integer count;
  Integer states;
  double wall_seconds = 0.0;
};

/// Number of x in (Z/p^l)^{ms} with every Phi_j^(rho)(x) = 0 mod p^l.
/// l = 0 gives 1.
CountReport gamma_m(const MultilinearSystem& system, const Integer& p, unsigned l,
                    const EnumerationOptions& options = {});
CountReport gamma_m(const FormSystem& fs, std::size_t m, const Integer& p, unsigned l,
                    const EnumerationOptions& options = {});

/// M(sigma, nu): distinct classes (p^{sigma-1} a_1, a_2) mod p^{2 sigma - 1 + nu}
/// over zeros a mod that modulus whose minor on `minor_columns` has
/// determinant valuation exactly sigma - 1. a_1 are the minor coordinates.
CountReport count_M(const MultilinearSystem& system, const Integer& p, unsigned sigma, unsigned nu,
                    std::span<const std::size_t> minor_columns, const EnumerationOptions& options = {});

struct LiftingBoundRow {
  unsigned nu = 0;
  Integer count;
  Integer bound;
  bool holds = false;
};

struct LiftingBoundReport {
  Integer p;
  unsigned sigma = 1;
  std::vector<std::size_t> minor_columns;
  std::vector<LiftingBoundRow> rows;
  bool holds = true;
  bool truncated = false;
  std::string truncation_reason;
};

/// Checks M(sigma, nu) >= p^{(ms - Rr) nu} M(sigma, 0) for nu = 0..nu_max.
/// A level that exceeds the budget truncates the report instead of failing.
LiftingBoundReport verify_lifting_bound(const MultilinearSystem& system, const Integer& p, unsigned sigma,
                                        unsigned nu_max, std::span<const std::size_t> minor_columns,
                                        const EnumerationOptions& options = {});

/// Integer vectors with all coordinates in [-radius, radius] that are exact
/// zeros of the expanded system.
CountReport count_rational_points(const FormSystem& fs, std::size_t m, std::uint64_t radius,
                                  const EnumerationOptions& options = {});

}  // namespace psol
