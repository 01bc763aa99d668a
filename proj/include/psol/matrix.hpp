#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psol/bigint.hpp"

namespace psol {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix select_columns(std::span<const std::size_t> columns) const;
  IntMatrix transposed() const;
  IntVector apply(std::span<const Integer> v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// Least h such that some maximal (rows x rows) minor of `a` has determinant
/// not divisible by p^h; nullopt stands for infinity (all maximal minors
/// vanish). Equals 1 + v_p(gcd of the maximal minors). Throws DomainError
/// when rows > cols.
std::optional<unsigned long> matrix_order(const IntMatrix& a, const Integer& p);

/// Rank over Z/pZ.
std::size_t rank_mod(const IntMatrix& a, const Integer& p);

/// Solutions of A x = b over (Z/p^k)^n, kept in Smith-parametrized form:
/// x = V y (mod p^k) where each y_t = base_t + s * step_t for s < choices_t.
class CongruenceSolutions {
 public:
  bool empty() const { return !solvable_; }
  Integer count() const;
  /// All solutions in colex order. Throws BudgetExceeded above `cap`.
  std::vector<IntVector> enumerate(std::uint64_t cap) const;

 private:
  friend class LocalSmithForm;
  bool solvable_ = false;
  Integer modulus_;
  IntMatrix right_;
  IntVector base_;
  IntVector step_;
  IntVector choices_;
};

/// Smith normal form over the local ring Z/p^k: left * A * right = D (mod p^k)
/// with D diagonal, D_tt = p^{v_t}, v_0 <= v_1 <= ... < k.
class LocalSmithForm {
 public:
  LocalSmithForm(const IntMatrix& a, const Integer& p, unsigned k);

  std::size_t rank() const { return valuations_.size(); }
  std::span<const unsigned long> valuations() const { return valuations_; }
  const IntMatrix& left() const { return left_; }
  const IntMatrix& right() const { return right_; }
  const Integer& modulus() const { return modulus_; }

  CongruenceSolutions solve(std::span<const Integer> rhs) const;

 private:
  Integer p_;
  unsigned k_;
  Integer modulus_;
  std::size_t rows_;
  std::size_t cols_;
  IntMatrix left_;
  IntMatrix right_;
  std::vector<unsigned long> valuations_;
};

inline CongruenceSolutions solve_congruence(const IntMatrix& a, std::span<const Integer> b,
                                            const Integer& p, unsigned k) {
  return LocalSmithForm(a, p, k).solve(b);
}

}  // namespace psol
