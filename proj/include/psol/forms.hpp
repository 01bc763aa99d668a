#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "psol/bigint.hpp"
#include "psol/matrix.hpp"

namespace psol {

using Exponents = std::vector<unsigned>;

struct Monomial {
  Exponents exponents;
  Integer coefficient;

  unsigned degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Sparse multivariate polynomial with integer coefficients. Terms are kept
/// sorted by exponent vector with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t variables) : variables_(variables) {}
  Polynomial(std::size_t variables, const std::map<Exponents, Integer>& terms);

  static Polynomial variable(std::size_t variables, std::size_t index);
  static Polynomial constant(std::size_t variables, const Integer& c);

  std::size_t variables() const { return variables_; }
  std::span<const Monomial> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Integer evaluate(std::span<const Integer> point) const;
  Polynomial derivative(std::size_t var) const;
  Polynomial pow(unsigned exp) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Integer& c, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t variables_ = 0;
  std::vector<Monomial> terms_;
};

/// R integer forms of common degree d in s variables.
class FormSystem {
 public:
  /// Throws DomainError if a monomial has the wrong degree or length.
  FormSystem(unsigned degree, std::size_t variables, std::vector<Polynomial> forms);

  unsigned degree() const { return degree_; }
  std::size_t variables() const { return variables_; }
  std::size_t form_count() const { return forms_.size(); }
  const Polynomial& form(std::size_t rho) const { return forms_[rho]; }
  std::span<const Polynomial> forms() const { return forms_; }

  IntVector evaluate(std::span<const Integer> x) const;

  friend bool operator==(const FormSystem&, const FormSystem&) = default;

 private:
  unsigned degree_;
  std::size_t variables_;
  std::vector<Polynomial> forms_;
};

/// Nondecreasing d-tuple of 0-based block indices with its multinomial
/// factor A(j) = d! / prod(multiplicity!).
struct MultiIndex {
  std::vector<unsigned> entries;
  std::vector<unsigned> multiplicities;
  Integer factor;
};

/// All nondecreasing d-tuples over {0..m-1}, in lexicographic order.
std::vector<MultiIndex> multi_index_set(std::size_t m, unsigned d);

Integer binomial(unsigned long n, unsigned long k);

struct ExpansionOptions {
  std::size_t term_cap = 1'000'000;
};

/// The system Phi_j^(rho) obtained from F^(rho)(t_1 x_1 + ... + t_m x_m) by
/// taking the coefficient of t_{j_1} ... t_{j_d}. Unknowns are laid out
/// block-major: x_{i,n} sits at column i * s + n. Equations are ordered
/// rho-major, then by j.
class MultilinearSystem {
 public:
  MultilinearSystem(FormSystem source, std::size_t blocks, std::vector<MultiIndex> indices,
                    std::vector<Polynomial> components);

  const FormSystem& source() const { return source_; }
  unsigned degree() const { return source_.degree(); }
  std::size_t variables() const { return source_.variables(); }
  std::size_t form_count() const { return source_.form_count(); }
  std::size_t blocks() const { return blocks_; }
  std::span<const MultiIndex> indices() const { return indices_; }

  /// r = Card(J)
  std::size_t index_count() const { return indices_.size(); }
  /// R r
  std::size_t equation_count() const { return components_.size(); }
  /// m s
  std::size_t unknown_count() const { return blocks_ * variables(); }

  std::size_t row(std::size_t rho, std::size_t j) const { return rho * indices_.size() + j; }
  std::size_t column(std::size_t block, std::size_t n) const { return block * variables() + n; }

  const Polynomial& component(std::size_t rho, std::size_t j) const { return components_[row(rho, j)]; }
  std::span<const Polynomial> components() const { return components_; }

  IntVector evaluate(std::span<const Integer> point) const;

 private:
  FormSystem source_;
  std::size_t blocks_;
  std::vector<MultiIndex> indices_;
  std::vector<Polynomial> components_;
};

MultilinearSystem expand_multilinear(const FormSystem& fs, std::size_t m,
                                     const ExpansionOptions& options = {});

struct JacobianEvaluation {
  IntMatrix matrix;
  IntVector point;
};

/// Symbolic partial derivatives of every component, ready for repeated
/// evaluation.
class JacobianForms {
 public:
  explicit JacobianForms(const MultilinearSystem& system);
  IntMatrix evaluate(std::span<const Integer> point) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

JacobianEvaluation jacobian_at(const MultilinearSystem& system, std::span<const Integer> point);

/// Value of the symmetric multilinear form attached to `form` (degree d) at
/// d vector arguments, computed by the polarization identity.
Rational polarize(const Polynomial& form, unsigned degree, std::span<const IntVector> args);

/// The Jacobian rebuilt from the forms B_n(...) = Phi(e_n, ...) via
/// polarization, independently of the symbolic expansion.
IntMatrix jacobian_by_polarization(const MultilinearSystem& system, std::span<const Integer> point);

}  // namespace psol
