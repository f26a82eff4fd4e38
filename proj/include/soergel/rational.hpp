#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace soergel {

/// Exact rational scalar. Always canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// "n" or "n/d"; the canonical text form used by all serializations.
std::string to_string(const Rational& q);

/// Inverse of to_string; throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace soergel
