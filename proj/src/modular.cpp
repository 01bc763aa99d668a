#include "psol/modular.hpp"

#include "psol/errors.hpp"

namespace psol {

ModularEvaluator::ModularEvaluator(std::span<const Polynomial> polys, std::uint64_t modulus)
    : modulus_(modulus) {
  if (modulus == 0 || modulus > (std::uint64_t{1} << 62)) throw DomainError("modulus out of word range");
  const Integer q(static_cast<unsigned long>(modulus));
  offsets_.push_back(0);
  for (const auto& poly : polys) {
    for (const auto& m : poly.terms()) {
      const std::uint64_t c = mod_floor(m.coefficient, q).get_ui();
      if (c == 0) continue;
      Term t{c, static_cast<std::uint32_t>(factors_.size()), 0};
      for (std::size_t v = 0; v < m.exponents.size(); ++v) {
        if (m.exponents[v] == 0) continue;
        factors_.push_back({static_cast<std::uint32_t>(v), m.exponents[v]});
        ++t.count;
      }
      terms_.push_back(t);
    }
    offsets_.push_back(terms_.size());
  }
}

std::uint64_t ModularEvaluator::value(std::size_t poly, std::span<const std::uint64_t> x) const {
  std::uint64_t sum = 0;
  for (std::size_t k = offsets_[poly]; k < offsets_[poly + 1]; ++k) {
    const Term& t = terms_[k];
    std::uint64_t prod = t.coeff;
    for (std::uint32_t f = t.first; f < t.first + t.count && prod != 0; ++f) {
      const std::uint64_t base = x[factors_[f].var] % modulus_;
      for (std::uint32_t e = 0; e < factors_[f].exp; ++e) prod = mul_mod(prod, base, modulus_);
    }
    sum += prod;
    if (sum >= modulus_) sum -= modulus_;
  }
  return sum;
}

bool ModularEvaluator::all_vanish(std::span<const std::uint64_t> x) const {
  for (std::size_t k = 0; k + 1 < offsets_.size(); ++k) {
    if (value(k, x) != 0) return false;
  }
  return true;
}

void ModularEvaluator::evaluate(std::span<const std::uint64_t> x, std::span<std::uint64_t> out) const {
  for (std::size_t k = 0; k + 1 < offsets_.size(); ++k) out[k] = value(k, x);
}

BoundedEvaluator::BoundedEvaluator(std::span<const Polynomial> polys, std::uint64_t radius) {
  // Sum of |c| * radius^deg must stay below 2^126 for every polynomial.
  const Integer limit = ipow(Integer(2), 126);
  const Integer r(static_cast<unsigned long>(radius));
  for (const auto& poly : polys) {
    Integer worst = 0;
    std::vector<Term> terms;
    for (const auto& m : poly.terms()) {
      worst += abs(m.coefficient) * ipow(r, m.degree());
      if (abs(m.coefficient) >= limit) {
        fits_ = false;
        return;
      }
      Term t;
      const Integer mag = abs(m.coefficient);
      const unsigned __int128 hi = Integer(mag >> 64).get_ui();
      const unsigned __int128 lo = Integer(mag & Integer("18446744073709551615")).get_ui();
      t.coeff = static_cast<__int128>((hi << 64) | lo);
      if (m.coefficient < 0) t.coeff = -t.coeff;
      for (std::size_t v = 0; v < m.exponents.size(); ++v) {
        if (m.exponents[v] != 0) t.factors.emplace_back(static_cast<std::uint32_t>(v), m.exponents[v]);
      }
      terms.push_back(std::move(t));
    }
    if (worst >= limit) {
      fits_ = false;
      return;
    }
    polys_.push_back(std::move(terms));
  }
}

bool BoundedEvaluator::all_vanish(std::span<const std::int64_t> x) const {
  for (const auto& poly : polys_) {
    __int128 sum = 0;
    for (const auto& t : poly) {
      __int128 prod = t.coeff;
      for (const auto& [var, exp] : t.factors) {
        for (std::uint32_t e = 0; e < exp; ++e) prod *= x[var];
      }
      sum += prod;
    }
    if (sum != 0) return false;
  }
  return true;
}

}  // namespace psol
