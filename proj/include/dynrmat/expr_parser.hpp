#pragma once

#include <string>

#include "dynrmat/scalar_expr.hpp"

namespace dynrmat {

// Grammar: integers (arbitrary precision), variables l1..l<max_vars>,
// operators + - * / with standard precedence, unary minus, parentheses.
// Rationals are written p/q (constant folding makes them exact constants).
// Throws ParseError with a 1-based column on malformed input; if max_vars >= 0
// a variable index past it is rejected.
ScalarExpr parse_expr(const std::string& text, int max_vars = -1);

} // namespace dynrmat
