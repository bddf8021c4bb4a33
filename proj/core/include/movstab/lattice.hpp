#pragma once

#include <memory>
#include <string>
#include <vector>

#include "movstab/matrix.hpp"
#include "movstab/rational.hpp"

namespace movstab {

// Inertia of a symmetric rational matrix: (positive, negative, zero) counts.
struct Signature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  bool operator==(const Signature&) const = default;
};

// Exact signature via symmetric congruence diagonalization (simultaneous
// row/column elimination over the rationals).  Throws PreconditionError if
// the matrix is not symmetric.
Signature certify_signature(const RatMat& gram);

class NSLattice;
using LatticePtr = std::shared_ptr<const NSLattice>;

// A numerical lattice of divisor/curve classes with a fixed intersection
// pairing.  Construction certifies that the pairing is nondegenerate of
// signature (1, rank-1); instances are immutable.
class NSLattice {
public:
  static LatticePtr create(RatMat gram, std::vector<std::string> basis_labels = {});

  int rank() const { return rank_; }
  const RatMat& gram() const { return gram_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  Rational pair(const RatVec& a, const RatVec& b) const;

private:
  NSLattice(RatMat gram, std::vector<std::string> labels, int rank)
      : gram_(std::move(gram)), labels_(std::move(labels)), rank_(rank) {}

  RatMat gram_;
  std::vector<std::string> labels_;
  int rank_;
};

bool same_lattice(const LatticePtr& a, const LatticePtr& b);

// An element of a numerical lattice, held in basis coordinates.
class NumClass {
public:
  NumClass(LatticePtr lattice, RatVec coords);

  const LatticePtr& lattice() const { return lattice_; }
  const RatVec& coords() const { return coords_; }
  bool is_zero() const;

  NumClass operator+(const NumClass& o) const;
  NumClass operator-(const NumClass& o) const;
  NumClass operator-() const;
  friend NumClass operator*(const Rational& s, const NumClass& x);
  bool operator==(const NumClass& o) const;

private:
  LatticePtr lattice_;
  RatVec coords_;
};

// Intersection number a . b.  Throws PreconditionError("incompatible
// lattices") when the operands live in different lattices.
Rational pairing(const NumClass& a, const NumClass& b);

// Hodge-index bound: for a with a.a > 0 and d with d.a = 0, certifies
// d.d <= 0 with equality iff d = 0.  The numeric check is re-run even though
// the lattice signature already guarantees it; a violation is an
// InvariantError (the certified state would be inconsistent).
struct HodgeBound {
  Rational self_pairing;  // d.d
  bool equality;          // true iff d == 0
};
HodgeBound hodge_bound(const NumClass& d, const NumClass& a);

// Lattice map with both actions: push (source -> target, curve-like) and
// pull (target -> source, divisor-like), adjoint under the two pairings:
//   pair_source(x, pull y) = pair_target(push x, y)   for all x, y.
class LatticeMorphism {
public:
  static LatticeMorphism create(LatticePtr source, LatticePtr target, RatMat push, RatMat pull);

  const LatticePtr& source() const { return source_; }
  const LatticePtr& target() const { return target_; }
  const RatMat& push() const { return push_; }
  const RatMat& pull() const { return pull_; }

private:
  LatticeMorphism() = default;
  LatticePtr source_, target_;
  RatMat push_, pull_;  // push: target.rank x source.rank, pull: source.rank x target.rank
};

enum class Transport { Push, Pull };

NumClass transport(const LatticeMorphism& m, const NumClass& x, Transport dir);

// Exponent of the quotient of the integer span of `ambient` by the integer
// span of `sub`: the least positive m with m * <ambient> contained in <sub>.
// Both lists must have integer coordinates and full rank; <sub> must be
// contained in <ambient>.
Integer cartier_index(const std::vector<NumClass>& ambient, const std::vector<NumClass>& sub);

}  // namespace movstab
