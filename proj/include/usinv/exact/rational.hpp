#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace usinv::exact {

/// Arbitrary-precision rational, always kept in canonical (reduced, positive
/// denominator) form by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

/// Serializes as "p/q", always with an explicit denominator ("3/1", "-1/2").
std::string to_string(const Rational& r);

/// Accepts "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace usinv::exact
