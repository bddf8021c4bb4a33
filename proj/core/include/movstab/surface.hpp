#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "movstab/stability.hpp"

namespace movstab {

// Candidate irreducible negative classes, integer coordinates.
struct NegativeCurveSet {
  std::vector<NumClass> curves;

  explicit NegativeCurveSet(std::vector<NumClass> curves_in = {});
};

struct ZariskiPair {
  NumClass positive;
  // (curve class, coefficient > 0), sorted by curve coordinates.
  std::vector<std::pair<NumClass, Rational>> negative;
};

// Zariski decomposition D = P + sum a_i C_i by iterative support growth:
// P meets every candidate curve nonnegatively, the support Gram matrix is
// negative definite, coefficients are positive, and P is orthogonal to the
// support.  P is finally checked nef against the dual of `eff`; failure
// means the candidate list misses a negative curve.
ZariskiPair zariski_decomposition(const NumClass& d, const NegativeCurveSet& curves,
                                  const RationalCone& eff);

enum class NefVerdict { Nef, InputInconsistent };

struct NefFromZeroSquare {
  NefVerdict verdict;
  ZariskiPair pair;
};

// For pseudo-effective D with D.D = 0 orthogonal to a nonzero movable class:
// the decomposition must have no negative part, so either certifies D nef or
// reports the input as inconsistent with the certified signature argument.
NefFromZeroSquare nef_from_zero_square(const NumClass& d, const NumClass& a,
                                       const NegativeCurveSet& curves, const RationalCone& eff);

// Trichotomy for D against the ample interior: either some integral class in
// the interior of `nef` is orthogonal to D, or D (resp. -D) pairs strictly
// positively with the whole interior and is verified pseudo-effective.
struct EffectivityResult {
  enum class Kind { AmpleOrthogonal, PseudoEffectivePlus, PseudoEffectiveMinus, DegenerateZero };
  Kind kind;
  std::optional<NumClass> witness;  // integral interior class with witness.D = 0
};

EffectivityResult effectivity_classifier(const NumClass& d, const RationalCone& nef,
                                         const RationalCone& eff);

struct BgiVerdict {
  Rational discriminant;  // 2 r c2 - (r-1) c1^2
  bool semistable;
  bool equality;  // discriminant == 0 (projective-flatness boundary)
  bool consistent;  // false: semistable with negative discriminant
  std::string status;  // "consistent" or "FAMILY-INCOMPLETE-OR-NONGEOMETRIC"
};

BgiVerdict bgi_verdict(const SubsheafFamily& fam, const NumClass& alpha, const RationalCone& mov);

struct FlatnessDerivation {
  Rational c1_square;  // certified 0
  Rational c2;         // certified 0
  bool c1_zero;        // certified true
};

struct FlatnessVerdict {
  bool certified;
  std::string verdict;  // "flat-certified" or the first failed condition
  std::optional<FlatnessDerivation> derivation;
};

// Surface flatness gate: c1.alpha = 0, c1^2 - c2 = 0, alpha^2 > 0 and
// semistability, checked in order with the first failure named.  On success
// the Hodge bound and the discriminant inequality force c1 = 0 and c2 = 0;
// a negative discriminant instead flags inconsistent family data.
FlatnessVerdict flatness_surface(const SubsheafFamily& fam, const NumClass& alpha,
                                 const RationalCone& mov);

struct ProjFlatnessVerdict {
  bool certified;        // discriminant vanishes under stability
  std::string verdict;   // "projectively-flat-certified" / "equality fails"
  std::string refinement;  // "", "flat (c1 = 0 forced)", "E nef", "E^* nef",
                           // "counterexample-to-input-consistency"
};

// Projective flatness gate under stability: discriminant must vanish; when
// additionally c1.alpha = 0 and c1^2 = 0 the effectivity trichotomy decides
// whether c1 = 0 is forced or E (resp. its dual) is nef.
ProjFlatnessVerdict proj_flatness_surface(const SubsheafFamily& fam, const NumClass& alpha,
                                          const RationalCone& nef, const RationalCone& eff,
                                          const NegativeCurveSet& curves);

struct LambdaReport {
  Rational value_lambda1;  // c1sqH - 1 * c2H
  Rational value_lambda2;  // c1sqH - 2 * c2H
  std::optional<Rational> upper_bound;  // 2r/(r-1) when rank > 1
};

struct HigherFlatness {
  bool passed;
  bool vanish_c1H;
  bool vanish_difference;  // c1sqH - c2H == 0
  std::string verdict;
  std::optional<LambdaReport> lambda;
};

// Dimension-n gate on polarization-capped numbers: c1.H^{n-1} = 0 and
// (c1^2 - c2).H^{n-2} = 0.  With the rank supplied, also evaluates the
// one-parameter variants c1^2.H^{n-2} - lambda c2.H^{n-2} at lambda = 1, 2.
HigherFlatness flatness_higher(int n, const Rational& c1H, const Rational& c1sqH,
                               const Rational& c2H, std::optional<int> rank = std::nullopt);

struct TorusGate {
  bool met;
  bool c2_vanishes;
  bool kx_trivial;
  std::string verdict;
};

// Numeric hypotheses of the torus-quotient characterization: capped second
// Chern number zero and numerically trivial canonical class (caller-attested).
TorusGate torus_quotient_gate(int n, const Rational& c2H, bool kx_trivial);

}  // namespace movstab
