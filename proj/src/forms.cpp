#include "psol/forms.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "psol/errors.hpp"

namespace psol {

unsigned Monomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

Polynomial::Polynomial(std::size_t variables, const std::map<Exponents, Integer>& terms)
    : variables_(variables) {
  for (const auto& [exps, coeff] : terms) {
    if (exps.size() != variables) throw DomainError("exponent vector length does not match variable count");
    if (coeff != 0) terms_.push_back({exps, coeff});
  }
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t index) {
  Exponents e(variables, 0);
  e.at(index) = 1;
  return Polynomial(variables, {{e, Integer(1)}});
}

Polynomial Polynomial::constant(std::size_t variables, const Integer& c) {
  return Polynomial(variables, {{Exponents(variables, 0), c}});
}

Integer Polynomial::evaluate(std::span<const Integer> point) const {
  if (point.size() != variables_) {
    throw DomainError("point has length " + std::to_string(point.size()) + ", expected " +
                      std::to_string(variables_));
  }
  Integer sum = 0;
  Integer term;
  for (const auto& m : terms_) {
    term = m.coefficient;
    for (std::size_t v = 0; v < variables_ && term != 0; ++v) {
      if (m.exponents[v] != 0) term *= ipow(point[v], m.exponents[v]);
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::map<Exponents, Integer> out;
  for (const auto& m : terms_) {
    const unsigned e = m.exponents.at(var);
    if (e == 0) continue;
    Exponents exps = m.exponents;
    exps[var] = e - 1;
    out[exps] += m.coefficient * e;
  }
  return Polynomial(variables_, out);
}

Polynomial Polynomial::pow(unsigned exp) const {
  Polynomial out = constant(variables_, 1);
  for (unsigned k = 0; k < exp; ++k) out = out * *this;
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_) throw DomainError("polynomial variable counts differ");
  std::map<Exponents, Integer> out;
  for (const auto& m : a.terms_) out[m.exponents] += m.coefficient;
  for (const auto& m : b.terms_) out[m.exponents] += m.coefficient;
  return Polynomial(a.variables_, out);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_) throw DomainError("polynomial variable counts differ");
  std::map<Exponents, Integer> out;
  Exponents e(a.variables_);
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = x.exponents[v] + y.exponents[v];
      out[e] += x.coefficient * y.coefficient;
    }
  }
  return Polynomial(a.variables_, out);
}

Polynomial operator*(const Integer& c, const Polynomial& a) {
  return Polynomial::constant(a.variables_, c) * a;
}

FormSystem::FormSystem(unsigned degree, std::size_t variables, std::vector<Polynomial> forms)
    : degree_(degree), variables_(variables), forms_(std::move(forms)) {
  if (degree_ < 1) throw DomainError("form degree must be at least 1");
  if (variables_ < 1) throw DomainError("variable count must be at least 1");
  if (forms_.empty()) throw DomainError("a form system needs at least one form");
  for (std::size_t rho = 0; rho < forms_.size(); ++rho) {
    if (forms_[rho].variables() != variables_) {
      throw DomainError("form " + std::to_string(rho) + " has " + std::to_string(forms_[rho].variables()) +
                        " variables, expected " + std::to_string(variables_));
    }
    for (const auto& m : forms_[rho].terms()) {
      if (m.degree() != degree_) {
        throw DomainError("form " + std::to_string(rho) + " has a monomial of degree " +
                          std::to_string(m.degree()) + " in a degree-" + std::to_string(degree_) + " system");
      }
    }
  }
}

IntVector FormSystem::evaluate(std::span<const Integer> x) const {
  IntVector out;
  out.reserve(forms_.size());
  for (const auto& f : forms_) out.push_back(f.evaluate(x));
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

namespace {

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

void collect_indices(std::size_t m, unsigned d, unsigned lowest, std::vector<unsigned>& prefix,
                     std::vector<MultiIndex>& out) {
  if (prefix.size() == d) {
    MultiIndex j;
    j.entries = prefix;
    j.multiplicities.assign(m, 0);
    for (unsigned e : prefix) ++j.multiplicities[e];
    j.factor = factorial(d);
    for (unsigned k : j.multiplicities) j.factor /= factorial(k);
    out.push_back(std::move(j));
    return;
  }
  for (unsigned i = lowest; i < m; ++i) {
    prefix.push_back(i);
    collect_indices(m, d, i, prefix, out);
    prefix.pop_back();
  }
}

// Distributes x_n^{e_n} over the m blocks for n = var.., accumulating the
// t-multiplicities, the block-major exponent vector and the multinomial weight.
struct Expander {
  const Exponents& source;
  std::size_t s;
  std::size_t m;
  const std::map<std::vector<unsigned>, std::size_t>& index_of;
  std::vector<std::map<Exponents, Integer>>& targets;
  const Integer& coefficient;

  std::vector<unsigned> t_mult;
  Exponents x_exps;

  void distribute(std::size_t n, const Integer& weight) {
    if (n == s) {
      targets[index_of.at(t_mult)][x_exps] += coefficient * weight;
      return;
    }
    split(n, 0, source[n], weight);
  }

  void split(std::size_t n, std::size_t block, unsigned remaining, const Integer& weight) {
    if (block + 1 == m) {
      place(n, block, remaining);
      distribute(n + 1, weight * binomial(remaining, remaining));
      unplace(n, block, remaining);
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      place(n, block, k);
      split(n, block + 1, remaining - k, weight * binomial(remaining, k));
      unplace(n, block, k);
    }
  }

  void place(std::size_t n, std::size_t block, unsigned k) {
    t_mult[block] += k;
    x_exps[block * s + n] = k;
  }
  void unplace(std::size_t n, std::size_t block, unsigned k) {
    t_mult[block] -= k;
    x_exps[block * s + n] = 0;
  }
};

}  // namespace

std::vector<MultiIndex> multi_index_set(std::size_t m, unsigned d) {
  if (m < 1 || d < 1) throw DomainError("multi-index set needs m >= 1 and d >= 1");
  std::vector<MultiIndex> out;
  std::vector<unsigned> prefix;
  collect_indices(m, d, 0, prefix, out);
  return out;
}

MultilinearSystem::MultilinearSystem(FormSystem source, std::size_t blocks, std::vector<MultiIndex> indices,
                                     std::vector<Polynomial> components)
    : source_(std::move(source)),
      blocks_(blocks),
      indices_(std::move(indices)),
      components_(std::move(components)) {
  if (components_.size() != source_.form_count() * indices_.size()) {
    throw DomainError("component count does not match R * Card(J)");
  }
}

IntVector MultilinearSystem::evaluate(std::span<const Integer> point) const {
  if (point.size() != unknown_count()) {
    throw DomainError("point has length " + std::to_string(point.size()) + ", expected m*s = " +
                      std::to_string(unknown_count()));
  }
  IntVector out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

MultilinearSystem expand_multilinear(const FormSystem& fs, std::size_t m, const ExpansionOptions& options) {
  if (m < 1) throw DomainError("block count m must be at least 1");
  const std::size_t s = fs.variables();
  std::vector<MultiIndex> indices = multi_index_set(m, fs.degree());
  std::map<std::vector<unsigned>, std::size_t> index_of;
  for (std::size_t k = 0; k < indices.size(); ++k) index_of[indices[k].multiplicities] = k;

  std::vector<Polynomial> components;
  components.reserve(fs.form_count() * indices.size());
  for (std::size_t rho = 0; rho < fs.form_count(); ++rho) {
    std::vector<std::map<Exponents, Integer>> targets(indices.size());
    for (const auto& mono : fs.form(rho).terms()) {
      Expander ex{mono.exponents, s, m, index_of, targets, mono.coefficient,
                  std::vector<unsigned>(m, 0), Exponents(m * s, 0)};
      ex.distribute(0, Integer(1));
      for (std::size_t j = 0; j < targets.size(); ++j) {
        if (targets[j].size() > options.term_cap) {
          throw BudgetExceeded("expansion of form " + std::to_string(rho) + " at multi-index " +
                               std::to_string(j) + " exceeds the term cap of " +
                               std::to_string(options.term_cap));
        }
      }
    }
    for (auto& t : targets) components.emplace_back(m * s, t);
  }
  return MultilinearSystem(fs, m, std::move(indices), std::move(components));
}

JacobianForms::JacobianForms(const MultilinearSystem& system)
    : rows_(system.equation_count()), cols_(system.unknown_count()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& c : system.components()) {
    for (std::size_t v = 0; v < cols_; ++v) entries_.push_back(c.derivative(v));
  }
}

IntMatrix JacobianForms::evaluate(std::span<const Integer> point) const {
  if (point.size() != cols_) {
    throw DomainError("point has length " + std::to_string(point.size()) + ", expected m*s = " +
                      std::to_string(cols_));
  }
  IntMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = entries_[r * cols_ + c].evaluate(point);
  }
  return out;
}

JacobianEvaluation jacobian_at(const MultilinearSystem& system, std::span<const Integer> point) {
  return {JacobianForms(system).evaluate(point), IntVector(point.begin(), point.end())};
}

Rational polarize(const Polynomial& form, unsigned degree, std::span<const IntVector> args) {
  if (args.size() != degree) throw DomainError("polarization needs exactly d arguments");
  const std::size_t s = form.variables();
  Integer total = 0;
  IntVector combo(s);
  for (unsigned long mask = 1; mask < (1ul << degree); ++mask) {
    std::fill(combo.begin(), combo.end(), Integer(0));
    unsigned size = 0;
    for (unsigned k = 0; k < degree; ++k) {
      if ((mask >> k & 1u) == 0) continue;
      ++size;
      for (std::size_t n = 0; n < s; ++n) combo[n] += args[k][n];
    }
    const Integer value = form.evaluate(combo);
    if ((degree - size) % 2 == 0) {
      total += value;
    } else {
      total -= value;
    }
  }
  Rational out(total, factorial(degree));
  out.canonicalize();
  return out;
}

IntMatrix jacobian_by_polarization(const MultilinearSystem& system, std::span<const Integer> point) {
  const std::size_t s = system.variables();
  const std::size_t m = system.blocks();
  const unsigned d = system.degree();
  if (point.size() != m * s) throw DomainError("point length does not match m*s");
  std::vector<IntVector> blocks(m);
  for (std::size_t i = 0; i < m; ++i) blocks[i].assign(point.begin() + i * s, point.begin() + (i + 1) * s);

  IntMatrix out(system.equation_count(), system.unknown_count());
  for (std::size_t rho = 0; rho < system.form_count(); ++rho) {
    const Polynomial& form = system.source().form(rho);
    for (std::size_t jx = 0; jx < system.index_count(); ++jx) {
      const MultiIndex& j = system.indices()[jx];
      for (std::size_t i = 0; i < m; ++i) {
        if (j.multiplicities[i] == 0) continue;
        std::vector<IntVector> args;
        args.reserve(d);
        args.emplace_back(s, 0);
        bool dropped = false;
        for (unsigned e : j.entries) {
          if (e == i && !dropped) {
            dropped = true;
            continue;
          }
          args.push_back(blocks[e]);
        }
        for (std::size_t n = 0; n < s; ++n) {
          args[0].assign(s, 0);
          args[0][n] = 1;
          const Rational v = j.factor * j.multiplicities[i] * polarize(form, d, args);
          if (v.get_den() != 1) throw InternalError("non-integral Jacobian entry from polarization");
          out(system.row(rho, jx), system.column(i, n)) = v.get_num();
        }
      }
    }
  }
  return out;
}

}  // namespace psol
