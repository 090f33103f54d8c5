#pragma once

#include "nullag/expr.hpp"

#include <map>
#include <string>

namespace nullag {

/// Partial derivative with respect to a jet symbol or a named constant.
/// Opaque functions f(t) are constant in every jet symbol except t, where
/// f^(k) maps to f^(k+1).
Expr partial(const Expr& e, const Expr& symbol);
Expr partial(const Expr& e, Jet j);

/// n-fold partial derivative.
Expr partial_n(const Expr& e, const Expr& symbol, int n);

/// Total time derivative along the jet:
///   d/dt e = de/dt + x' de/dx + x'' de/dx' + x''' de/dx''.
/// Requires e free of x''' (throws invalid_argument otherwise).
Expr total_dt(const Expr& e);

/// Replaces jet symbols and named constants by expressions.
Expr substitute(const Expr& e, const std::map<Expr, Expr, ExprLess>& replacements);

/// Replaces every opaque function f^(k)(t) by the k-th t-derivative of the
/// given instantiation. Functions without an instantiation are left alone.
Expr substitute_functions(const Expr& e, const std::map<std::string, Expr>& instantiations);

}  // namespace nullag
