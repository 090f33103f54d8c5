#pragma once

#include "nullag/diff.hpp"
#include "nullag/evaluate.hpp"
#include "nullag/expr.hpp"
#include "nullag/parse.hpp"
#include "nullag/print.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

namespace nullag::test {

inline Expr P(const char* text) { return parse(text); }

/// Random small trees over x, x', t, a0, f1(t) with sums, products,
/// non-negative integer powers, exp, sin, cos and 1/(2 + u^2). Every tree is
/// defined everywhere.
class TreeGen {
 public:
  explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

  Expr atom() {
    switch (pick(7)) {
      case 0: return sym::x();
      case 1: return sym::xdot();
      case 2: return sym::t();
      case 3: return Expr::param("a0");
      case 4: return Expr::func("f1", static_cast<int>(pick(2)));
      case 5: return Expr(make_rational(static_cast<long>(pick(9)) - 4, static_cast<long>(pick(3)) + 1));
      default: return sym::x();
    }
  }

  Expr tree(int depth) {
    if (depth == 0) return atom();
    switch (pick(8)) {
      case 0:
      case 1: return tree(depth - 1) + tree(depth - 1);
      case 2:
      case 3: return tree(depth - 1) * tree(depth - 1);
      case 4: return pow(tree(depth - 1), Rational(static_cast<long>(pick(3))));
      case 5: return exp(Expr(make_rational(1, 2)) * tree(depth - 1));
      case 6: return pick(2) ? sin(tree(depth - 1)) : cos(tree(depth - 1));
      default: {
        Expr u = tree(depth - 1);
        return pow(Expr(2) + u * u, Rational(-1));
      }
    }
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Rational small_rational() { return make_rational(static_cast<long>(pick(11)) - 5, static_cast<long>(pick(4)) + 1); }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64 rng_;
};

/// Bindings with a0 = 0.7 and f1(t) = sin(t) + 2.
inline Bindings standard_bindings(const JetPoint& p) {
  Bindings b;
  b.set(p);
  b.set_param("a0", 0.7);
  b.set_function("f1", parse("sin(t) + 2"));
  return b;
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace nullag::test
