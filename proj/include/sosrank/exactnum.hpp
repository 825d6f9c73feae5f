#pragma once

// Exact rational scalars and the factorial combinatorics built on them.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace sosrank {

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator/denominator). GMP keeps mpq_class canonical after every
/// arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& x);

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Builds p/q in canonical form.
Rational make_rational(std::int64_t p, std::int64_t q = 1);

/// a (a-1) ... (a-r+1); the empty product for r = 0.
Rational falling_factorial(const Rational& a, unsigned r);

/// a (a+1) ... (a+r-1); the empty product for r = 0.
Rational rising_factorial(const Rational& a, unsigned r);

/// Generalized binomial coefficient falling_factorial(a, b) / b!.
Rational binomial(const Rational& a, unsigned b);

/// Integer binomial C(n, k) for 0 <= k <= n (0 otherwise).
Rational binomial(unsigned n, unsigned k);

Rational factorial(unsigned k);

/// k (k-2) (k-4) ... down to 2 or 1. Defined for k >= -1 with
/// 0!! = (-1)!! = 1. Throws std::domain_error for k < -1.
Rational double_factorial(long k);

/// (-1)^r as a Rational.
Rational sign_power(long r);

/// Integer power x^e, e >= 0.
Rational pow(const Rational& x, unsigned e);

int sign(const Rational& x);

double to_double(const Rational& x);

/// Nearest rational with denominator 2^bits (round-half-away).
Rational snap_to_dyadic(double x, unsigned bits = 40);

}  // namespace sosrank
