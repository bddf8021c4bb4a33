#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "movstab/chern.hpp"
#include "movstab/cone.hpp"

namespace movstab {

// Finite destabilizer family: the top sheaf class together with the numeric
// classes of candidate subsheaves and their containment order.  The implicit
// relations bottom < member < top always hold; `contains` records the
// member-to-member order (edges point from the smaller to the larger rank).
struct SubsheafFamily {
  SheafClass top;
  std::vector<SheafClass> members;
  std::vector<std::pair<int, int>> contains;  // (i, j): member i inside member j
  bool saturated = false;

  SubsheafFamily(SheafClass top_in, std::vector<SheafClass> members_in,
                 std::vector<std::pair<int, int>> contains_in = {}, bool saturated_in = false);
};

// Index convention for witnesses and filtration steps: 0-based member index,
// or kTopIndex for the top sheaf itself.
inline constexpr int kTopIndex = -1;

Rational slope(const SheafClass& e, const NumClass& alpha);

struct SlopeExtremum {
  Rational value;
  int witness;     // member index or kTopIndex
  bool ambiguous;  // a distinct candidate shares (slope, rank, c1)
};

// Maximum slope over members and the top itself.  Ties resolve to the higher
// rank, then the lexicographically smallest c1; identical signatures are
// flagged, never silently dropped.  `mov` is the movable cone the
// polarization must lie in.
SlopeExtremum mu_max(const SubsheafFamily& fam, const NumClass& alpha, const RationalCone& mov);

// Same maximum restricted to members of strictly smaller rank than the top.
// Throws PreconditionError("empty strict family") when no such member exists.
SlopeExtremum mu_max_sc(const SubsheafFamily& fam, const NumClass& alpha,
                        const RationalCone& mov);

bool is_semistable(const SubsheafFamily& fam, const NumClass& alpha, const RationalCone& mov);

// Families with no strict-rank member are vacuously stable.
bool is_stable(const SubsheafFamily& fam, const NumClass& alpha, const RationalCone& mov);

// Member indices with slope >= threshold at beta, in input order.
std::vector<int> destabilizer_filter(const SubsheafFamily& fam, const NumClass& beta,
                                     const Rational& threshold, const RationalCone& mov);

struct Filtration {
  std::vector<int> steps;              // member indices, final step kTopIndex
  std::vector<SheafClass> quotients;   // successive quotient classes
  std::vector<Rational> slopes;        // successive quotient slopes
  bool strictly_decreasing = false;    // no equal adjacent slopes
  bool ambiguous = false;              // a tie on (slope, rank, c1) occurred
};

// Greedy chain through the containment order maximizing the quotient slope at
// each step (ties: higher rank, then lexicographically smaller c1).  Quotient
// slopes are verified non-increasing; equalities mark the filtration as
// refined rather than strict.
Filtration hn_filtration(const SubsheafFamily& fam, const NumClass& alpha,
                         const RationalCone& mov);

// Maximal-length chain with all quotient slopes equal to the top slope.
// Requires semistability at alpha.
Filtration jh_filtration(const SubsheafFamily& fam, const NumClass& alpha,
                         const RationalCone& mov);

// Exact stability radius along the segment from `a` toward `b`: the largest e
// such that the family stays stable at (1-t) a + t b for every t < e.
// Requires stability at `a`; returns 1 when nothing destabilizes at `b`.
Rational openness_epsilon(const SubsheafFamily& fam, const NumClass& a, const NumClass& b,
                          const RationalCone& mov);

// Exact rational interval, possibly empty, with open/closed endpoints.
struct IntervalQ {
  bool empty = true;
  Rational lo, hi;
  bool lo_open = false, hi_open = false;

  bool contains(const Rational& t) const;
};

enum class PointClass { Stable, StrictlySemistable, Unstable };

struct SegmentWall {
  int member;
  Rational epsilon;
};

struct SegmentReport {
  IntervalQ semistable;  // closed (intersection of closed conditions)
  IntervalQ stable;
  std::vector<SegmentWall> walls;  // member slope crossings inside [0, 1]
  PointClass at_start, at_end;
};

// Slope comparison of every member against the top along the segment
// (1-eps) a + eps b; each difference is affine in eps, so both epsilon-sets
// are exact intervals.
SegmentReport segment_stability(const SubsheafFamily& fam, const NumClass& a, const NumClass& b,
                                const RationalCone& mov);

struct Wall {
  int member;
  NumClass functional;  // c1(F)/rank(F) - c1(E)/rank(E)
};

// Numerical wall functionals for strict-rank members; identically zero
// functionals (proportional members) are dropped.
std::vector<Wall> wall_hyperplanes(const SubsheafFamily& fam);

PointClass classify_point(const SubsheafFamily& fam, const NumClass& alpha,
                          const RationalCone& mov);

}  // namespace movstab
