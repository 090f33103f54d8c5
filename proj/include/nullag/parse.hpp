#pragma once

#include "nullag/expr.hpp"

#include <string_view>

namespace nullag {

/// Parses the ASCII expression grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('-'|'+') unary | factor
///   factor := base ('^' rational)?
///   base   := number | x | x' | x'' | x''' | t | ident
///           | ident '(' t ')' "'"*        opaque function, primes = order
///           | func '(' expr ')' | '(' expr ')'
///   func   := exp | ln | sin | cos | abs
///
/// A bare identifier is a named constant. The exponent must reduce to an
/// exact rational, e.g. x^2, x^-1, x^(1/2). Throws Error with code syntax,
/// unknown_function or malformed_derivative and the byte position.
Expr parse(std::string_view text);

}  // namespace nullag
