#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace caploc {

// Exact rational arithmetic. mpq_class keeps values canonical after every
// arithmetic operation; values built from raw numerator/denominator pairs go
// through make_rational so they are canonicalized too.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long long numerator, long long denominator = 1);

// Accepts "p", "-p" and "p/q" with q > 0. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

// Advisory decimal rendering with `digits` significant digits.
std::string to_decimal(const Rational& value, int digits = 6);

BigInt floor_of(const Rational& value);
bool is_integer(const Rational& value);
bool strictly_between_zero_and_one(const Rational& value);

// Converts an integral rational that is known to fit; throws otherwise.
long long to_int64(const Rational& value);

}  // namespace caploc
