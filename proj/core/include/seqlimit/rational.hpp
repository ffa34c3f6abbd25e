#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace seqlimit {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" or a plain decimal such as "0.05" or "-1.5e-3"
/// into an exact canonical rational. Throws DomainError on bad syntax or
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" (lowest terms), or "num" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

double to_double(const Rational& q);

/// Exact conversion of a finite double.
Rational from_double(double x);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t n);

/// q^e for a non-negative integer exponent.
Rational pow(const Rational& q, unsigned e);

inline Rational abs(const Rational& q) {
    Rational r = q;
    if (sgn(r) < 0) r = -r;
    return r;
}

/// Floor of a rational as a big integer.
BigInt floor(const Rational& q);

}  // namespace seqlimit
