#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace bohreq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal ("-1.25", "3e-2") into an
/// exact rational in lowest terms. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are written without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor(const Rational& q);
/// Fractional part in [0, 1).
Rational frac(const Rational& q);

Integer lcm(const Integer& a, const Integer& b);
Integer denominator_lcm(std::span<const Rational> values);

/// Nonnegative generator of the additive group sum(values[i] * Z); zero when
/// every entry is zero.
Rational rational_gcd(std::span<const Rational> values);

/// Primitive integer vector on the ray through `v` (gcd of entries 1), with
/// the first nonzero entry positive. All-zero input yields all zeros.
std::vector<Integer> primitive_integer_vector(std::span<const Rational> v);

std::int64_t to_int64(const Integer& z);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Distance from x to the nearest integer.
double distance_to_integer(double x);

}  // namespace bohreq
