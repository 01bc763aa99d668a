#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "psol/errors.hpp"
#include "psol/matrix.hpp"

using namespace psol;
using oracle::ints;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  return IntMatrix(r, c, oracle::random_vector(rng, r * c, bound));
}

// Unit upper-triangular times unit lower-triangular: determinant 1.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix upper = IntMatrix::identity(n);
  IntMatrix lower = IntMatrix::identity(n);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      upper(i, j) = dist(rng);
      lower(j, i) = dist(rng);
    }
  }
  return upper * lower;
}

}  // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const IntMatrix a = random_matrix(rng, n, n, trial % 3 == 0 ? 1 : 20);
    CHECK(determinant(a) == oracle::cofactor_det(a));
  }
  CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("matrix_order examples") {
  CHECK(matrix_order(IntMatrix::identity(3), Integer(7)) == 1ul);
  CHECK(matrix_order(IntMatrix(1, 2, ints({3, -6})), Integer(5)) == 1ul);
  CHECK(matrix_order(IntMatrix(2, 2, ints({5, 0, 0, 5})), Integer(5)) == 3ul);
  CHECK_FALSE(matrix_order(IntMatrix(2, 3), Integer(5)).has_value());
  CHECK_THROWS_AS(matrix_order(IntMatrix(3, 2), Integer(5)), DomainError);
}

TEST_CASE("matrix_order matches enumeration of maximal minors") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t rows = 1 + trial % 3;
    const std::size_t cols = rows + trial % 3;
    const Integer p(trial % 2 == 0 ? 2 : 3);
    IntMatrix a = random_matrix(rng, rows, cols, 6);
    if (trial % 4 == 0) {
      for (std::size_t c = 0; c < cols; ++c) a(0, c) *= p * p;
    }
    const auto order = matrix_order(a, p);
    CAPTURE(trial);
    CHECK(order.value_or(0) == oracle::order_by_minors(a, p));
  }
}

TEST_CASE("matrix_order is invariant under permutations and unimodular multipliers") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + trial % 3;
    const std::size_t cols = rows + 1 + trial % 2;
    const Integer p(trial % 3 == 0 ? 5 : 2);
    const IntMatrix a = random_matrix(rng, rows, cols, 10);
    const auto base = matrix_order(a, p);

    std::vector<std::size_t> perm(cols);
    for (std::size_t c = 0; c < cols; ++c) perm[c] = c;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(matrix_order(a.select_columns(perm), p) == base);
    CHECK(matrix_order(random_unimodular(rng, rows) * a * random_unimodular(rng, cols), p) == base);
  }
}

TEST_CASE("rank_mod") {
  CHECK(rank_mod(IntMatrix(1, 2, ints({27, -6})), Integer(5)) == 1);
  CHECK(rank_mod(IntMatrix(2, 2, ints({5, 10, 15, 20})), Integer(5)) == 0);
  CHECK(rank_mod(IntMatrix(2, 3, ints({1, 2, 3, 2, 4, 6})), Integer(7)) == 1);
  CHECK(rank_mod(IntMatrix(2, 3, ints({1, 2, 3, 2, 4, 7})), Integer(7)) == 2);
}

TEST_CASE("local Smith form diagonalizes mod p^k") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + trial % 3;
    const std::size_t cols = 1 + (trial / 3) % 3;
    const Integer p(trial % 2 == 0 ? 3 : 2);
    const unsigned k = 1 + trial % 3;
    const IntMatrix a = random_matrix(rng, rows, cols, 12);
    const LocalSmithForm snf(a, p, k);
    const IntMatrix d = snf.left() * a * snf.right();
    const Integer q = ipow(p, k);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        Integer expected = 0;
        if (r == c && r < snf.rank()) expected = ipow(p, snf.valuations()[r]);
        CHECK(mod_floor(d(r, c) - expected, q) == 0);
      }
    }
    CHECK(std::is_sorted(snf.valuations().begin(), snf.valuations().end()));
  }
}

TEST_CASE("solve_congruence finds exactly the brute-force solutions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + trial % 2;
    const std::size_t cols = 1 + trial % 3;
    const Integer p(trial % 2 == 0 ? 2 : 3);
    const unsigned k = 1 + trial % 2;
    const Integer q = ipow(p, k);
    const IntMatrix a = random_matrix(rng, rows, cols, 9);
    const IntVector b = oracle::random_vector(rng, rows, 9);

    std::vector<IntVector> brute;
    oracle::for_each_vector(cols, q, [&](const IntVector& x) {
      const IntVector ax = a.apply(x);
      bool ok = true;
      for (std::size_t r = 0; r < rows; ++r) ok = ok && mod_floor(ax[r] - b[r], q) == 0;
      if (ok) brute.push_back(x);
    });
    std::sort(brute.begin(), brute.end(), [](const IntVector& l, const IntVector& r) { return colex_less(l, r); });

    const auto solutions = solve_congruence(a, b, p, k);
    CAPTURE(trial);
    CHECK(solutions.count() == Integer(static_cast<unsigned long>(brute.size())));
    CHECK(solutions.enumerate(1'000'000) == brute);
  }
}

TEST_CASE("congruence enumeration respects its cap") {
  const auto sols = solve_congruence(IntMatrix(1, 3), ints({0}), Integer(5), 2);
  CHECK(sols.count() == 15625);
  CHECK_THROWS_AS(sols.enumerate(100), BudgetExceeded);
}
