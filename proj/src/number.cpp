#include "nullag/number.hpp"

#include "nullag/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace nullag {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::non_finite, "cannot convert non-finite double to rational");
  }
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  if (auto slash = text.find('/'); slash != std::string::npos) {
    try {
      mpz_class num(text.substr(pos, slash - pos), 10);
      mpz_class den(text.substr(slash + 1), 10);
      if (den == 0) return std::nullopt;
      Rational q(num, den);
      q.canonicalize();
      return negative ? Rational(-q) : q;
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return std::nullopt;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return std::nullopt;
    ++pos;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(pos), &used);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (pos + used != text.size()) return std::nullopt;
    exponent += e;
  }
  Rational q{mpz_class(digits, 10)};
  q *= pow_int(Rational(10), exponent);
  return negative ? Rational(-q) : q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::optional<long> to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) return std::nullopt;
  return q.get_num().get_si();
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow_int(const Rational& q, long n) {
  if (n == 0) return Rational(1);
  if (q == 0) {
    if (n < 0) throw Error(ErrorCode::division_guard, "0 raised to a negative power");
    return Rational(0);
  }
  unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), m);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), m);
  Rational r = n < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> pow_exact(const Rational& q, const Rational& e) {
  if (auto n = to_long(e)) return pow_int(q, *n);
  if (q < 0) return std::nullopt;
  if (!e.get_den().fits_ulong_p()) return std::nullopt;
  unsigned long root = e.get_den().get_ui();
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), root) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), root) == 0) return std::nullopt;
  Rational base(num, den);
  base.canonicalize();
  auto p = to_long(Rational(e.get_num()));
  if (!p) return std::nullopt;
  return pow_int(base, *p);
}

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

}  // namespace nullag
