#pragma once

// Shared fixtures for the test suite: the two toy lattices used throughout
// (a quadric surface model and a one-point blow-up of the plane), the running
// subsheaf family, and small deterministic random generators.

#include <random>
#include <string>
#include <vector>

#include "movstab/chern.hpp"
#include "movstab/cone.hpp"
#include "movstab/errors.hpp"
#include "movstab/lattice.hpp"
#include "movstab/stability.hpp"

namespace mt = movstab;

inline mt::Rational Q(long long n, long long d = 1) {
  return mt::Rational(mt::Integer(n), mt::Integer(d));
}

inline mt::RatVec qvec(std::vector<long long> v) {
  mt::RatVec out;
  for (long long x : v) out.push_back(Q(x));
  return out;
}

// Hyperbolic plane gram [[0,1],[1,0]]: the quadric surface model.
inline mt::LatticePtr quadric_lattice() {
  return mt::NSLattice::create({{Q(0), Q(1)}, {Q(1), Q(0)}}, {"f1", "f2"});
}

// diag(1, -1) with basis H, E: blow-up of the plane at one point.
inline mt::LatticePtr blowup_lattice() {
  return mt::NSLattice::create({{Q(1), Q(0)}, {Q(0), Q(-1)}}, {"H", "E"});
}

inline mt::LatticePtr line_lattice() {
  return mt::NSLattice::create({{Q(1)}}, {"H"});
}

// diag(1, -1, ..., -1) of the given rank.
inline mt::LatticePtr diag_lattice(int rank) {
  mt::RatMat gram(rank, mt::RatVec(rank, Q(0)));
  gram[0][0] = Q(1);
  for (int i = 1; i < rank; ++i) gram[i][i] = Q(-1);
  return mt::NSLattice::create(gram, {});
}

inline mt::NumClass cls(const mt::LatticePtr& lat, std::vector<long long> coords) {
  return mt::NumClass(lat, qvec(std::move(coords)));
}

// First quadrant of the quadric lattice: both the effective and the nef cone
// of the quadric, self-dual under the hyperbolic pairing.
inline mt::RationalCone quadrant_cone(const mt::LatticePtr& lat) {
  return mt::RationalCone::from_generators({cls(lat, {1, 0}), cls(lat, {0, 1})});
}

// Running family on the quadric: top (2, (1,1), 1) with rank-one members
// (1, (1,0), 0) and (1, (0,1), 0), no explicit containments, saturated.
inline mt::SubsheafFamily running_family(const mt::LatticePtr& lat) {
  mt::SheafClass top(2, cls(lat, {1, 1}), Q(1));
  std::vector<mt::SheafClass> members = {
      mt::SheafClass(1, cls(lat, {1, 0}), Q(0)),
      mt::SheafClass(1, cls(lat, {0, 1}), Q(0)),
  };
  return mt::SubsheafFamily(top, members, {}, true);
}

// Deterministic RNG helpers (fixed seeds; never wall-clock dependent).
struct TestRng {
  std::mt19937_64 gen;
  explicit TestRng(unsigned long long seed) : gen(seed) {}

  long long ll(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(gen);
  }
  mt::Rational rat(long long lo, long long hi, long long max_den = 8) {
    long long d = ll(1, max_den);
    return mt::Rational(mt::Integer(ll(lo * d, hi * d)), mt::Integer(d));
  }
  mt::RatVec vec(int n, long long lo, long long hi) {
    mt::RatVec v;
    for (int i = 0; i < n; ++i) v.push_back(Q(ll(lo, hi)));
    return v;
  }
};
