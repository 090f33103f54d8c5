#pragma once

#include "nullag/expr.hpp"

#include <iosfwd>
#include <string>

namespace nullag {

/// Renders e in the parse grammar; parse(to_string(e)) == e.
std::string to_string(const Expr& e);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace nullag
