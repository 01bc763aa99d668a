#include "psol/bigint.hpp"

#include "psol/errors.hpp"

namespace psol {

Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<unsigned long> valuation(const Integer& a, const Integer& p) {
  if (a == 0) return std::nullopt;
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

bool is_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer parse_integer(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw ParseError("empty integer literal '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw ParseError("invalid integer literal '" + text + "'");
    }
  }
  Integer out;
  const std::string digits = text[0] == '+' ? text.substr(1) : text;
  out.set_str(digits, 10);
  return out;
}

std::string to_string(const Integer& a) { return a.get_str(10); }

Rational rational_power(const Integer& p, long exp) {
  const unsigned long mag = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  Integer pw = ipow(p, mag);
  Rational out = exp < 0 ? Rational(Integer(1), pw) : Rational(pw);
  out.canonicalize();
  return out;
}

std::optional<std::uint64_t> small_power(std::uint64_t p, unsigned l) {
  return bounded_power(p, l, std::uint64_t{1} << 62);
}

std::optional<std::uint64_t> bounded_power(std::uint64_t base, unsigned long exp,
                                           std::uint64_t cap) {
  std::uint64_t out = 1;
  for (unsigned long i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return std::nullopt;
    out *= base;
    if (out > cap) return std::nullopt;
  }
  if (out > cap) return std::nullopt;
  return out;
}

bool colex_less(std::span<const Integer> a, std::span<const Integer> b) {
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

}  // namespace psol
