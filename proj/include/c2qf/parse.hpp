#pragma once

#include <string>
#include <string_view>

#include "c2qf/field.hpp"

namespace c2qf {

class QuadraticForm;

// Field grammar:  GF(2^k) | GF(q) | <field>(name) | <field>((name):prec)
Field parse_field(std::string_view text);

// Element grammar: sums/products/quotients/powers of integers (mod 2), tower
// variables, w, parentheses and O(X^n) for Laurent fields.
Element parse_element(Field field, std::string_view text);

// A polynomial in `var` over `field`, e.g. "X^2+w*X+1".
Poly parse_polynomial(Field field, const std::string& var, std::string_view text);

}  // namespace c2qf
