#pragma once

// Exact rational helpers on top of GMP: bit sizes, dyadic rounding and a
// small text format ("p", "p/q", "-2^-20", "0.125").

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace ratsos {

using Integer = mpz_class;
using Rational = mpq_class;

/// Bit size of an integer: floor(log2|b|) + 1, with 0 mapped to 1.
std::size_t bit_size(const Integer& b);
/// max(bit_size(num), bit_size(den)) of the reduced fraction.
std::size_t bit_size(const Rational& q);

/// 2^e for any sign of e.
Rational pow2(long e);

/// floor(log2|x|) for x != 0.
long floor_log2(const Rational& x);

/// Nearest m / 2^frac_bits (ties away from zero).
Rational round_fixed(const Rational& x, unsigned frac_bits);
/// m / 2^frac_bits with m = trunc(x * 2^frac_bits).
Rational truncate_fixed(const Rational& x, unsigned frac_bits);
/// Nearest binary floating value with `mant_bits` significant bits.
Rational round_float(const Rational& x, unsigned mant_bits);
/// Square root of x >= 0 rounded to `mant_bits` significant bits.
Rational sqrt_float(const Rational& x, unsigned mant_bits);

Rational abs(const Rational& x);
int sign(const Rational& x);

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Decimal rendering: exact when the denominator is of the form 2^a 5^b,
/// otherwise rounded to `digits` significant digits.
std::string to_decimal(const Rational& q, int digits = 60);

/// Short approximate rendering for logs, e.g. "3.94386e-31".
std::string to_approx(const Rational& q);

}  // namespace ratsos
