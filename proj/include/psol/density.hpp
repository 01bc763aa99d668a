#pragma once

#include <optional>

#include <string>
#include <vector>

#include "psol/bigint.hpp"
#include "psol/counting.hpp"
#include "psol/enumerate.hpp"
#include "psol/forms.hpp"

namespace psol {

/// Approximants c_i = p^{i (Rr - ms)} Gamma_m(p^i) of the local density.
struct DensityTrace {
  Integer p;
  std::size_t m = 1;
  std::vector<Integer> gamma;
  std::vector<Rational> values;
  /// True when the last two approximants coincide. Reported, never assumed.
  bool converged = false;
  bool truncated = false;
  std::string truncation_reason;
};

DensityTrace chi_trace(const FormSystem& fs, std::size_t m, const Integer& p, unsigned i_max,
                       const EnumerationOptions& options = {});

enum class ExpSumMode { floating, exact };

/// Partial sums of the exponential-sum expression for the local density,
/// summed over levels l = 0..L with u running over vectors mod p^l that are
/// not all divisible by p.
struct ExpSumResult {
  ExpSumMode mode = ExpSumMode::exact;
  Integer p;
  std::size_t m = 1;
  unsigned levels = 0;
  std::vector<double> float_terms;
  double float_value = 0.0;
  double tolerance = 0.0;
  std::vector<Rational> exact_terms;
  Rational exact_value;
  Integer states;
};

/// Absolute tolerance promised for floating-mode partial sums.
inline constexpr double kExpSumTolerance = 1e-6;

ExpSumResult chi_expsum_partial(const FormSystem& fs, std::size_t m, const Integer& p, unsigned L,
                                ExpSumMode mode, const EnumerationOptions& options = {});

/// kappa_p = p^{(1 - 2 sigma)(ms - Rr)}.
Rational kappa_bound(const Integer& p, unsigned sigma, std::size_t ms, std::size_t rr);

struct KnownConstant {
  std::string key;
  std::string description;
  unsigned d;
  unsigned R;
  Integer upper;
};

/// Explicit variable-count bounds for R forms of degree d and m-dimensional
/// linear spaces.
struct BoundsSheet {
  unsigned d = 1;
  unsigned R = 1;
  unsigned m = 1;
  Integer r;
  /// 2^{d-1}(d-1)R(R+1) + 1
  Integer birch;
  /// 3 * 2^{d-1}(d-1)R(Rr+1) + 1
  Integer linear_spaces;
  /// (R d^2)^{2^{d-1}}
  Integer wooley;
  /// 2^{d-1}(d-1)R, the multiplier of gamma_d^*(R) in Schmidt's condition.
  Integer schmidt_factor;
  /// schmidt_factor times the Wooley bound.
  Integer schmidt_comparison;
  /// schmidt_factor times a tabulated constant, when one beats the Wooley bound.
  std::optional<Integer> schmidt_comparison_known;
  std::vector<KnownConstant> known;
};

BoundsSheet bounds_sheet(unsigned d, unsigned R, unsigned m);

/// Published upper bounds on gamma_d^*(R).
std::vector<KnownConstant> known_constants();

}  // namespace psol
