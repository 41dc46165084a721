#pragma once

#include "twistcert/rational_function.hpp"

#include <string_view>

namespace twistcert {

/// Parses the canonical ASCII grammar: sums and products of rational literals
/// `p/q`, variables `x0..x15`, the extension generator `t`, parentheses and
/// non-negative integer powers `^k`. Throws ParseError with a 1-based column.
MultiPoly parse_poly(std::string_view text, int nvars, const FieldSpec* field);

/// Parses "p" or "(p)/(q)" as printed by RationalFunction::to_string.
RationalFunction parse_rational_function(std::string_view text, int nvars, const FieldSpec* field);

/// Parses an element of K (a polynomial in t only).
Scalar parse_scalar(std::string_view text, const FieldSpec* field);

/// Parses a univariate polynomial in t over Q, returned low degree first.
/// Used for minimal polynomials.
std::vector<mpq_class> parse_univariate_t(std::string_view text);

/// Parses a field description: "Q" or a minimal polynomial in t.
const FieldSpec* parse_field(std::string_view text);

} // namespace twistcert
