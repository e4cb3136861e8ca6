#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace voabranch {

/// Exact rational used for weights, exponents and coefficients throughout.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in canonical form. Throws std::invalid_argument if den == 0.
Rational frac(std::int64_t num, std::int64_t den);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

bool is_integer(const Rational& value);

/// Nonnegative integer square root if `value` is a perfect square.
std::optional<std::int64_t> exact_isqrt(std::int64_t value);

/// Returns m >= 0 with value == m^2/4, if one exists.
std::optional<std::int64_t> quarter_square_root(const Rational& value);

std::int64_t to_int64(const Integer& value);

}  // namespace voabranch
