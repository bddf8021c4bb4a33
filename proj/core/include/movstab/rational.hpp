#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace movstab {

// All arithmetic in this library is exact.  Rationals are GMP-backed and are
// kept canonical (reduced, positive denominator) by the backend.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Parses "p/q" or "p" with optional leading '-'.  Throws std::invalid_argument
// on malformed text or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical text form: "p/q" with q > 0 and gcd(p, q) = 1; "/q" omitted when
// q = 1.  Never a decimal.
std::string format_rational(const Rational& value);

}  // namespace movstab
