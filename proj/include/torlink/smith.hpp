#pragma once

#include "torlink/matrix.hpp"

namespace torlink {

// U * A * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
// left_inverse is U^{-1}, accumulated alongside U so callers that need
// preimages of cokernel generators do not have to invert U.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;
  IntegerMatrix left_inverse;
};

SmithForm smith_normal_form(const IntegerMatrix& a);

}  // namespace torlink
