#pragma once

#include "nullag/domain.hpp"
#include "nullag/expr.hpp"

#include <vector>

namespace nullag {

struct Antiderivative {
  Expr value;
  /// Conditions under which value is valid, e.g. a*x + b > 0 for a logarithm.
  std::vector<Guard> guards;
};

/// Antiderivative with respect to the jet symbol var (x or t); every other
/// symbol is held constant. Supported terms, times a var-free coefficient:
///
///   v^k,  v^n exp(a v + b),  v^n sin(a v + b),  v^n cos(a v + b),
///   v^n (a v + b)^m,  v^n exp(c ln v + b),  t^n f^(k)(t) with k >= 1,
///
/// for integer n >= 0 and integer m. Terms of t^n f^(k)(t) are integrated by
/// parts; leftover integrands are accepted when they cancel across terms.
/// Throws antiderivative_unsupported otherwise. The constant of integration
/// is zero.
Antiderivative antiderivative(const Expr& e, Jet var);

/// a and b with e = a*v + b, both free of v and a != 0.
std::optional<std::pair<Expr, Expr>> linear_in(const Expr& e, const Expr& v);

}  // namespace nullag
