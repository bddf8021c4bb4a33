#pragma once

#include <optional>

#include "movstab/rational.hpp"

namespace movstab {

// Small dense exact-rational linear algebra.  Dimensions in this library are
// the Picard numbers of surfaces/threefolds, so plain Gaussian elimination is
// both fast enough and certifiably exact.

RatMat rat_identity(int n);
RatMat rat_transpose(const RatMat& a);
RatMat rat_mul(const RatMat& a, const RatMat& b);
RatVec rat_mul_vec(const RatMat& a, const RatVec& x);
bool rat_is_symmetric(const RatMat& a);

int rat_rank(RatMat a);

// Basis of the right kernel {x : a x = 0}.
std::vector<RatVec> rat_kernel_basis(const RatMat& a);

// Unique solution of a square system; nullopt when singular.
std::optional<RatVec> rat_solve(RatMat a, RatVec b);

std::optional<RatMat> rat_inverse(const RatMat& a);

bool rat_lex_less(const RatVec& a, const RatVec& b);

// Scales a rational vector to coprime integer entries, preserving direction.
// The zero vector is returned unchanged.
RatVec primitive_integer(const RatVec& v);

bool rat_is_integer(const Rational& q);
bool rat_vec_is_integer(const RatVec& v);

}  // namespace movstab
