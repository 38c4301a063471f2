#pragma once

#include <vector>

#include "torlink/integer.hpp"

namespace torlink {

using IntegerRow = std::vector<Integer>;

// Howell normal form of the row span of `rows` inside (Z/modulus)^cols.
//
// The result is in echelon form; each pivot divides the modulus; entries
// above a pivot lie in [0, pivot); and for every pivot column j, the rows
// after the pivot row span every element of the span that vanishes in
// columns <= j. That last property makes the form unique for the span and
// lets kernels be read off as the rows with zero leading block.
std::vector<IntegerRow> howell_form(std::vector<IntegerRow> rows, std::size_t cols,
                                    const Integer& modulus);

// Column index of the first nonzero entry, or row.size() for a zero row.
std::size_t leading_column(const IntegerRow& row);

}  // namespace torlink
