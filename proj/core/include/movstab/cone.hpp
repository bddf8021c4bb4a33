#pragma once

#include <vector>

#include "movstab/lattice.hpp"

namespace movstab {

// Rational polyhedral cone with both descriptions kept in sync:
//   generators: primitive integer classes spanning the cone,
//   facets:     primitive integer functionals f with pairing(x, f) >= 0 on
//               the cone (a non-full-dimensional cone carries opposite facet
//               pairs encoding the equations cutting out its span).
// The facet description is computed eagerly from the generators by the
// double description method, so membership tests are exact sign checks.
class RationalCone {
public:
  enum class Mode { Closed, Interior };

  // Throws PreconditionError on an empty or mixed-lattice generator list.
  static RationalCone from_generators(std::vector<NumClass> generators);

  // Swaps the two descriptions (dual of the dual has identical membership).
  RationalCone dual() const;

  bool contains(const NumClass& x, Mode mode = Mode::Closed) const;

  // Dimension of the linear span of the generators.
  int dim() const { return dim_; }
  bool full_dimensional() const;

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<NumClass>& generators() const { return generators_; }
  const std::vector<NumClass>& facets() const { return facets_; }

private:
  RationalCone() = default;
  static RationalCone make(LatticePtr lattice, std::vector<NumClass> gens,
                           std::vector<NumClass> facets);

  LatticePtr lattice_;
  std::vector<NumClass> generators_;
  std::vector<NumClass> facets_;
  int dim_ = 0;
};

// Convex path (1-t) a + t b between two classes; requires 0 <= t <= 1.
NumClass segment(const NumClass& a, const NumClass& b, const Rational& t);

}  // namespace movstab
