#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hschur {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVec = std::vector<Rational>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// p-adic valuation of a rational; std::nullopt stands for +infinity (q == 0).
std::optional<long> padic_valuation(const Rational& q, unsigned long p);

/// Minimum valuation over the coordinates of a vector (nullopt if all zero).
std::optional<long> padic_valuation(const RationalVec& v, unsigned long p);

/// p^e as an exact rational (e may be negative).
Rational pow_p(unsigned long p, long e);

/// The p-adic fractional part {q}_p: the unique rational u / p^e with
/// 0 <= u < p^e such that q - {q}_p lies in Z_p.
Rational padic_fractional_part(const Rational& q, unsigned long p);

/// Reduce q modulo p^k Z_p to the representative p^k * {q / p^k}_p.
Rational padic_reduce(const Rational& q, unsigned long p, long k);

/// If q = p^e exactly, returns e.
std::optional<long> padic_exponent_of_power(const Rational& q, unsigned long p);

/// Fractional part in [0, 1) of a rational (ordinary, not p-adic).
Rational frac01(const Rational& q);

bool is_prime(unsigned long p);

Rational dot(const RationalVec& x, const RationalVec& y);

}  // namespace hschur
