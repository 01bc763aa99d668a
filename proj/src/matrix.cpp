#include "psol/matrix.hpp"

#include <algorithm>
#include <utility>

#include "psol/errors.hpp"

namespace psol {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw DomainError("matrix data size does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> columns) const {
  IntMatrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out(r, c) = (*this)(r, columns[c]);
  }
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

IntVector IntMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) throw DomainError("vector length does not match matrix columns");
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

long rational_valuation(const Rational& q, const Integer& p) {
  const auto num = valuation(q.get_num(), p);
  const auto den = valuation(q.get_den(), p);
  return static_cast<long>(*num) - static_cast<long>(den.value_or(0));
}

}  // namespace

std::optional<unsigned long> matrix_order(const IntMatrix& a, const Integer& p) {
  if (a.rows() > a.cols()) {
    throw DomainError("matrix order needs rows <= cols, got " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()));
  }
  // Elimination over Z_(p): every pivot has minimal valuation in the active
  // block, so all row multipliers are p-integral and the determinantal
  // divisor of the maximal minors is the product of the pivots.
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  std::vector<Rational> w(n * m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) w[r * m + c] = a(r, c);
  }
  std::vector<bool> used_col(m, false);
  long total = 0;
  for (std::size_t t = 0; t < n; ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    long best_val = 0;
    for (std::size_t r = t; r < n; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        if (used_col[c] || w[r * m + c] == 0) continue;
        const long v = rational_valuation(w[r * m + c], p);
        if (!best || v < best_val) {
          best = {r, c};
          best_val = v;
        }
      }
    }
    if (!best) return std::nullopt;
    const auto [pr, pc] = *best;
    for (std::size_t c = 0; c < m; ++c) std::swap(w[t * m + c], w[pr * m + c]);
    used_col[pc] = true;
    total += best_val;
    const Rational pivot = w[t * m + pc];
    for (std::size_t r = t + 1; r < n; ++r) {
      if (w[r * m + pc] == 0) continue;
      const Rational f = w[r * m + pc] / pivot;
      for (std::size_t c = 0; c < m; ++c) {
        if (!used_col[c] || c == pc) w[r * m + c] -= f * w[t * m + c];
      }
      w[r * m + pc] = 0;
    }
  }
  return static_cast<unsigned long>(total) + 1;
}

std::size_t rank_mod(const IntMatrix& a, const Integer& p) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  IntMatrix w(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) w(r, c) = mod_floor(a(r, c), p);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && w(piv, c) == 0) ++piv;
    if (piv == n) continue;
    for (std::size_t k = 0; k < m; ++k) std::swap(w(rank, k), w(piv, k));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), w(rank, c).get_mpz_t(), p.get_mpz_t());
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (w(r, c) == 0) continue;
      const Integer f = mod_floor(w(r, c) * inv, p);
      for (std::size_t k = c; k < m; ++k) w(r, k) = mod_floor(w(r, k) - f * w(rank, k), p);
    }
    ++rank;
  }
  return rank;
}

LocalSmithForm::LocalSmithForm(const IntMatrix& a, const Integer& p, unsigned k)
    : p_(p),
      k_(k),
      modulus_(ipow(p, k)),
      rows_(a.rows()),
      cols_(a.cols()),
      left_(IntMatrix::identity(a.rows())),
      right_(IntMatrix::identity(a.cols())) {
  if (k == 0) throw DomainError("local Smith form needs k >= 1");
  IntMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) d(r, c) = mod_floor(a(r, c), modulus_);
  }
  const auto reduce_row = [&](IntMatrix& m, std::size_t r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = mod_floor(m(r, c), modulus_);
  };
  const auto reduce_col = [&](IntMatrix& m, std::size_t c) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = mod_floor(m(r, c), modulus_);
  };

  for (std::size_t t = 0; t < std::min(rows_, cols_); ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    unsigned long best_val = 0;
    for (std::size_t r = t; r < rows_; ++r) {
      for (std::size_t c = t; c < cols_; ++c) {
        if (d(r, c) == 0) continue;
        const unsigned long v = *valuation(d(r, c), p_);
        if (!best || v < best_val) {
          best = {r, c};
          best_val = v;
        }
      }
    }
    if (!best) break;
    const auto [pr, pc] = *best;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(d(t, c), d(pr, c));
    for (std::size_t c = 0; c < rows_; ++c) std::swap(left_(t, c), left_(pr, c));
    for (std::size_t r = 0; r < rows_; ++r) std::swap(d(r, t), d(r, pc));
    for (std::size_t r = 0; r < cols_; ++r) std::swap(right_(r, t), right_(r, pc));

    const Integer scale = ipow(p_, best_val);
    Integer unit;
    mpz_divexact(unit.get_mpz_t(), d(t, t).get_mpz_t(), scale.get_mpz_t());
    Integer inv;
    mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), modulus_.get_mpz_t());
    for (std::size_t c = 0; c < cols_; ++c) d(t, c) *= inv;
    for (std::size_t c = 0; c < rows_; ++c) left_(t, c) *= inv;
    reduce_row(d, t);
    reduce_row(left_, t);

    for (std::size_t r = t + 1; r < rows_; ++r) {
      if (d(r, t) == 0) continue;
      Integer f;
      mpz_divexact(f.get_mpz_t(), d(r, t).get_mpz_t(), scale.get_mpz_t());
      for (std::size_t c = 0; c < cols_; ++c) d(r, c) -= f * d(t, c);
      for (std::size_t c = 0; c < rows_; ++c) left_(r, c) -= f * left_(t, c);
      reduce_row(d, r);
      reduce_row(left_, r);
    }
    for (std::size_t c = t + 1; c < cols_; ++c) {
      if (d(t, c) == 0) continue;
      Integer f;
      mpz_divexact(f.get_mpz_t(), d(t, c).get_mpz_t(), scale.get_mpz_t());
      for (std::size_t r = 0; r < rows_; ++r) d(r, c) -= f * d(r, t);
      for (std::size_t r = 0; r < cols_; ++r) right_(r, c) -= f * right_(r, t);
      reduce_col(d, c);
      reduce_col(right_, c);
    }
    valuations_.push_back(best_val);
  }
}

CongruenceSolutions LocalSmithForm::solve(std::span<const Integer> rhs) const {
  if (rhs.size() != rows_) throw DomainError("right-hand side length does not match matrix rows");
  CongruenceSolutions out;
  out.modulus_ = modulus_;
  out.right_ = right_;
  IntVector c = left_.apply(rhs);
  for (auto& v : c) v = mod_floor(v, modulus_);

  out.base_.assign(cols_, 0);
  out.step_.assign(cols_, 1);
  out.choices_.assign(cols_, modulus_);
  for (std::size_t t = 0; t < rows_; ++t) {
    if (t < rank()) {
      const Integer pv = ipow(p_, valuations_[t]);
      if (!mpz_divisible_p(c[t].get_mpz_t(), pv.get_mpz_t())) return out;
      Integer q;
      mpz_divexact(q.get_mpz_t(), c[t].get_mpz_t(), pv.get_mpz_t());
      out.base_[t] = q;
      out.step_[t] = ipow(p_, k_ - valuations_[t]);
      out.choices_[t] = pv;
    } else if (c[t] != 0) {
      return out;
    }
  }
  out.solvable_ = true;
  return out;
}

Integer CongruenceSolutions::count() const {
  if (!solvable_) return 0;
  Integer n = 1;
  for (const auto& c : choices_) n *= c;
  return n;
}

std::vector<IntVector> CongruenceSolutions::enumerate(std::uint64_t cap) const {
  std::vector<IntVector> out;
  if (!solvable_) return out;
  if (count() > Integer(static_cast<unsigned long>(cap))) {
    throw BudgetExceeded("congruence has " + to_string(count()) + " solutions, above cap " +
                         std::to_string(cap));
  }
  const std::size_t n = base_.size();
  IntVector digits(n, 0);
  for (;;) {
    IntVector y(n);
    for (std::size_t t = 0; t < n; ++t) y[t] = base_[t] + digits[t] * step_[t];
    IntVector x = right_.apply(y);
    for (auto& v : x) v = mod_floor(v, modulus_);
    out.push_back(std::move(x));
    std::size_t t = 0;
    while (t < n) {
      if (++digits[t] < choices_[t]) break;
      digits[t] = 0;
      ++t;
    }
    if (t == n) break;
  }
  std::sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) { return colex_less(a, b); });
  return out;
}

}  // namespace psol
