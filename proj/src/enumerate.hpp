#pragma once

#include <cstdint>
#include <vector>

#include "c2qf/field.hpp"

namespace c2qf {

// q^n, or BudgetExceeded when it exceeds the budget.
std::uint64_t power_checked(std::uint64_t q, int n, std::uint64_t budget);

// Polynomials in the tower variables of f with coefficients in the bottom
// field and every partial degree at most d. Index i has base-q digits equal
// to the coefficients of the monomials, constant term least significant.
std::vector<Element> bounded_polynomials(Field f, int d, std::uint64_t budget);

}  // namespace c2qf
