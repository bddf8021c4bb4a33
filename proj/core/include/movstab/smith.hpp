#pragma once

#include "movstab/rational.hpp"

namespace movstab {

using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

// Smith normal form over the integers: left * a * right = d with left, right
// unimodular and d diagonal, nonnegative, with d[i] | d[i+1].
struct SmithResult {
  IntMat d;
  IntMat left;
  IntMat right;
};

SmithResult smith_normal_form(IntMat a);

// The nonzero diagonal of the Smith form, in divisibility order.
std::vector<Integer> elementary_divisors(const IntMat& a);

IntMat int_identity(int n);
IntMat int_mul(const IntMat& a, const IntMat& b);

}  // namespace movstab
