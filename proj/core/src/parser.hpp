#pragma once

// Internal: recursive-descent parser for the expression DSL. Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ['^' ['-'] digits]
//   base   := digits | varref | '(' expr ')'
//   varref := ident ['[' ident (',' ident)* ']']
// Subscript sugar: ident '_' letters desugars to the bracket form when every
// base coordinate name is a single character.

#include "jetvar/bundle.hpp"
#include "jetvar/expr.hpp"

#include <string>

namespace jetvar::detail {

Expr parse_expression(const BundleSpec& spec, const std::string& src);
VarKey parse_var_reference(const BundleSpec& spec, const std::string& src);

} // namespace jetvar::detail
