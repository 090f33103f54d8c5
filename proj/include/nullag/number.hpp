#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace nullag {

/// Exact rational scalar used for every symbolic constant and exponent.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// Parses "3", "-2/7", "0.125", "1e-3" exactly.
std::optional<Rational> parse_rational(const std::string& text);

bool is_integer(const Rational& q);
std::optional<long> to_long(const Rational& q);
double to_double(const Rational& q);
std::string to_string(const Rational& q);

/// q^n for integer n; throws on 0^negative.
Rational pow_int(const Rational& q, long n);

/// Exact q^e when the root is rational, e.g. 4^(1/2) = 2, 8^(-2/3) = 1/4.
std::optional<Rational> pow_exact(const Rational& q, const Rational& e);

Rational binomial(long n, long k);
Rational factorial(long n);

}  // namespace nullag
