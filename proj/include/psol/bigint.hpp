#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psol {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// base^exp for a non-negative machine exponent.
Integer ipow(const Integer& base, unsigned long exp);

/// Least non-negative residue of a modulo m (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);

/// p-adic valuation of a; nullopt for a == 0.
std::optional<unsigned long> valuation(const Integer& a, const Integer& p);

/// True when n is a (probable) prime; uses GMP's Miller-Rabin with 40 rounds.
bool is_prime(const Integer& n);

/// Parses a decimal integer with optional sign; throws ParseError.
Integer parse_integer(const std::string& text);

std::string to_string(const Integer& a);

/// Exact rational p^e for a signed exponent.
Rational rational_power(const Integer& p, long exp);

/// p^l as a machine word, or nullopt if it does not fit below 2^62.
std::optional<std::uint64_t> small_power(std::uint64_t p, unsigned l);

/// base^exp if it is at most cap, else nullopt. Never overflows.
std::optional<std::uint64_t> bounded_power(std::uint64_t base, unsigned long exp,
                                           std::uint64_t cap);

/// Orders vectors by their mixed-radix little-endian rank: the last
/// coordinate is most significant. This is the enumeration order used for
/// every listing of residue vectors.
bool colex_less(std::span<const Integer> a, std::span<const Integer> b);

}  // namespace psol
