#pragma once

#include <vector>

#include "movstab/lattice.hpp"

namespace movstab {

// Numerical Chern data of a coherent sheaf truncated at degree two:
// (rank, c1, c2) with c2 a rational number (already capped against the
// ambient polarization in dimension > 2, or the honest second Chern number
// on a surface).
struct SheafClass {
  int rank;
  NumClass c1;
  Rational c2;

  SheafClass(int rank_in, NumClass c1_in, Rational c2_in);

  // Degree-two Chern character component: c1^2/2 - c2.
  Rational ch2() const;
};

// Tensor product on class data: rank multiplies, c1(E (x) F) =
// rank(F) c1(E) + rank(E) c1(F), and ch2 follows the multiplicativity of the
// Chern character.
SheafClass tensor_class(const SheafClass& e, const SheafClass& f);

// Dual: (rank, -c1, c2); c2 is fixed at this truncation.
SheafClass dual_class(const SheafClass& e);

// Class of an extension of `quot` by `sub`: ranks and c1 add,
// c2 = c2(sub) + c2(quot) + c1(sub).c1(quot), so total Chern classes
// multiply through degree two.
SheafClass whitney_extension(const SheafClass& sub, const SheafClass& quot);

// Discriminant 2 r c2 - (r - 1) c1^2; nonnegative for semistable sheaves on
// the geometric side, so a negative value flags inconsistent family data.
Rational bg_discriminant(const SheafClass& e);

// Fully decomposed model: a direct sum of line classes.  Serves as the
// brute-force oracle for the class calculus.
struct SplitBundle {
  std::vector<NumClass> summands;  // non-empty, common lattice

  explicit SplitBundle(std::vector<NumClass> summands_in);
  SheafClass induced() const;  // (count, sum Li, sum_{i<j} Li.Lj)
};

// Symmetric power by monomial multiset enumeration: one summand
// sum_i a_i L_i per multiset with sum a_i = m; C(s+m-1, m) summands total.
SplitBundle sym_split(const SplitBundle& b, int m);

}  // namespace movstab
