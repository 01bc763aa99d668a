#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psol/bigint.hpp"
#include "psol/forms.hpp"

namespace psol {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

/// A list of polynomials compiled for evaluation modulo q < 2^62 on word-size
/// residues.
class ModularEvaluator {
 public:
  ModularEvaluator(std::span<const Polynomial> polys, std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  std::size_t size() const { return offsets_.size() - 1; }

  /// True when every polynomial vanishes mod q at x.
  bool all_vanish(std::span<const std::uint64_t> x) const;
  void evaluate(std::span<const std::uint64_t> x, std::span<std::uint64_t> out) const;

 private:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
  };
  struct Term {
    std::uint64_t coeff;
    std::uint32_t first;
    std::uint32_t count;
  };

  std::uint64_t value(std::size_t poly, std::span<const std::uint64_t> x) const;

  std::uint64_t modulus_;
  std::vector<Term> terms_;
  std::vector<Factor> factors_;
  std::vector<std::size_t> offsets_;
};

/// Exact evaluation in 128-bit arithmetic for points with |x_k| <= radius;
/// constructible only when no intermediate value can overflow.
class BoundedEvaluator {
 public:
  /// Returns false from `fits` if 128-bit evaluation could overflow.
  BoundedEvaluator(std::span<const Polynomial> polys, std::uint64_t radius);

  bool fits() const { return fits_; }
  bool all_vanish(std::span<const std::int64_t> x) const;

 private:
  struct Term {
    __int128 coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
  };
  bool fits_ = true;
  std::vector<std::vector<Term>> polys_;
};

}  // namespace psol
