#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "upcert/rational_function.hpp"

namespace upcert {

/// Polynomial input grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := factor (('*' | '/') factor | factor)*     juxtaposition multiplies
///   factor  := ('+' | '-') factor | power
///   power   := primary ('^' integer)?
///   primary := integer | var | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
///
/// `sqrt` takes a positive rational constant. Floating literals are rejected.
/// All texts passed together share one number field, the multiquadratic field
/// generated by `i` and the square roots that occur.
struct ParsedExpressions {
  FieldPtr field;
  std::vector<RationalFunction> values;
};

ParsedExpressions parse_expressions(std::span<const std::string> texts, const std::string& var = "z");

/// Parses one polynomial in `var`; throws ParseError on division by a
/// non-constant.
Poly parse_poly(std::string_view text, const std::string& var = "z");

/// Parses several polynomials into a common field.
std::vector<Poly> parse_polys(std::span<const std::string> texts, const std::string& var = "z");

RationalFunction parse_rational_function(std::string_view text, const std::string& var = "u");

/// Parses a constant into an existing field; every radical must lie in it.
ExactScalar parse_scalar(std::string_view text, const FieldPtr& field = NumberField::rationals());

/// Parses a polynomial whose radicals must all lie in `field`.
Poly parse_poly_in(std::string_view text, const FieldPtr& field, const std::string& var = "z");

}  // namespace upcert
