#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "geocrystal/expr.hpp"

namespace geocrystal {

/// Parses the expression DSL:
///
///     expr    := term (('+' | '-') term)*
///     term    := power (('*' | '/') power)*
///     power   := primary ('^' exponent)*
///     exponent:= ['-'] integer | '(' ['-'] integer ')'
///     primary := identifier | literal | '(' expr ')' | '-' primary
///
/// A literal is `p` or `p/q` written without spaces; `1 / 2` is a division of
/// two constants. Identifiers are [A-Za-z_][A-Za-z0-9_.]*. A leading '-' on a
/// literal gives a negative constant; on anything else it means (-1)*x.
///
/// Throws ParseError (with 1-based line and column) on malformed input or a
/// zero literal.
Expr parse_expr(std::string_view text);

/// Prints in the DSL so that parse_expr(to_string(e)) is structurally equal to
/// e. Binary operators are spaced, literals are not.
std::string to_string(const Expr& e);

/// Tree form: {"op": "add", "args": [...]}, {"op": "var", "name": "x"},
/// {"op": "const", "value": "p/q"}, {"op": "pow", "args": [base], "exponent": k}.
nlohmann::json to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);

}  // namespace geocrystal
