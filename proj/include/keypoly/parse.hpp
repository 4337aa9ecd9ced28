#pragma once

#include <string>

#include "keypoly/poly.hpp"

namespace keypoly {

/**
 * Parses a polynomial literal over `field`.
 *
 * Variables are `x` and `t` (case-sensitive); `*` is optional between
 * factors, `/` divides by nonzero constants, `^` takes an integer exponent
 * or, on `t`, a rational one (`t^-1`, `t^(-1/2)`, `t^-1/2` are all accepted,
 * the exponent being read greedily as a rational). Parentheses group.
 * Everything the printers emit parses back to the same value.
 */
Poly parse_poly(const std::string& text, const FieldDescriptor& field);

/// Parses a constant (degree <= 0) literal.
FieldElem parse_field_elem(const std::string& text, const FieldDescriptor& field);

}  // namespace keypoly
