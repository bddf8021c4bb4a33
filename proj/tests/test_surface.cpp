#include <algorithm>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "movstab/surface.hpp"

using namespace movstab;

namespace {

RationalCone blowup_eff(const LatticePtr& lat) {
  return RationalCone::from_generators({cls(lat, {0, 1}), cls(lat, {1, -1})});
}

// Independent negative-definiteness check by leading principal minors:
// (-1)^k det_k > 0 for all k.
bool negative_definite_minors(const RatMat& g) {
  const int n = static_cast<int>(g.size());
  for (int k = 1; k <= n; ++k) {
    RatMat sub(k, RatVec(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = g[i][j];
    // Exact determinant by Gaussian elimination with rational pivots.
    Rational det = 1;
    for (int col = 0; col < k; ++col) {
      int piv = -1;
      for (int row = col; row < k; ++row)
        if (sub[row][col] != 0) {
          piv = row;
          break;
        }
      if (piv < 0) return false;  // singular principal minor
      if (piv != col) {
        std::swap(sub[piv], sub[col]);
        det = -det;
      }
      det *= sub[col][col];
      for (int row = col + 1; row < k; ++row) {
        Rational f = sub[row][col] / sub[col][col];
        for (int c2 = col; c2 < k; ++c2) sub[row][c2] -= f * sub[col][c2];
      }
    }
    if (k % 2 == 1 ? det >= 0 : det <= 0) return false;
  }
  return true;
}

void check_zariski_invariants(const NumClass& d, const ZariskiPair& z,
                              const NegativeCurveSet& curves) {
  // Orthogonality and nonnegative meeting with every candidate.
  for (const auto& [curve, coeff] : z.negative) {
    CHECK(coeff > 0);
    CHECK(pairing(z.positive, curve) == 0);
  }
  for (const auto& c : curves.curves) CHECK(pairing(z.positive, c) >= 0);
  // Support Gram matrix negative definite (independent minor test).
  const int s = static_cast<int>(z.negative.size());
  if (s > 0) {
    RatMat g(s, RatVec(s));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) g[i][j] = pairing(z.negative[i].first, z.negative[j].first);
    CHECK(negative_definite_minors(g));
  }
  // Reconstruction.
  NumClass recon = z.positive;
  for (const auto& [curve, coeff] : z.negative) recon = recon + coeff * curve;
  CHECK(recon == d);
}

}  // namespace

TEST_CASE("curve sets validate integrality and lattice consistency") {
  auto lat = blowup_lattice();
  CHECK_NOTHROW(NegativeCurveSet({cls(lat, {0, 1})}));
  CHECK_NOTHROW(NegativeCurveSet());
  CHECK_THROWS_WITH_AS(NegativeCurveSet({NumClass(lat, {Q(1, 2), Q(0)})}),
                       "curve class has non-integer coordinates", PreconditionError);
  CHECK_THROWS_WITH_AS(NegativeCurveSet({cls(lat, {0, 1}), cls(quadric_lattice(), {1, 0})}),
                       "incompatible lattices", PreconditionError);
}

TEST_CASE("zariski decomposition on the blow-up") {
  auto lat = blowup_lattice();
  auto eff = blowup_eff(lat);
  NegativeCurveSet curves({cls(lat, {0, 1})});

  // 2H + E = (2H) + 1 * E.
  auto z = zariski_decomposition(cls(lat, {2, 1}), curves, eff);
  CHECK(z.positive == cls(lat, {2, 0}));
  REQUIRE(z.negative.size() == 1);
  CHECK(z.negative[0].first == cls(lat, {0, 1}));
  CHECK(z.negative[0].second == Q(1));
  check_zariski_invariants(cls(lat, {2, 1}), z, curves);

  // H + E decomposes the same way.
  auto z2 = zariski_decomposition(cls(lat, {1, 1}), curves, eff);
  CHECK(z2.positive == cls(lat, {1, 0}));
  REQUIRE(z2.negative.size() == 1);
  CHECK(z2.negative[0].second == Q(1));

  // Nef classes are their own positive part.
  auto z3 = zariski_decomposition(cls(lat, {1, -1}), curves, eff);
  CHECK(z3.positive == cls(lat, {1, -1}));
  CHECK(z3.negative.empty());

  auto z0 = zariski_decomposition(cls(lat, {0, 0}), curves, eff);
  CHECK(z0.positive.is_zero());
  CHECK(z0.negative.empty());

  // Idempotence: decomposing the positive part changes nothing.
  auto zp = zariski_decomposition(z.positive, curves, eff);
  CHECK(zp.positive == z.positive);
  CHECK(zp.negative.empty());

  CHECK_THROWS_WITH_AS(zariski_decomposition(cls(lat, {-1, 0}), curves, eff),
                       "divisor not pseudo-effective", PreconditionError);
}

TEST_CASE("zariski decomposition with a two-curve support") {
  auto lat = diag_lattice(3);
  auto eff = RationalCone::from_generators(
      {cls(lat, {1, 0, 0}), cls(lat, {0, 1, 0}), cls(lat, {0, 0, 1})});
  NegativeCurveSet curves({cls(lat, {0, 1, 0}), cls(lat, {0, 0, 1})});
  NumClass d = cls(lat, {3, 1, 2});

  auto z = zariski_decomposition(d, curves, eff);
  CHECK(z.positive == cls(lat, {3, 0, 0}));
  REQUIRE(z.negative.size() == 2);
  // Negative part sorted lexicographically by curve coordinates.
  CHECK(z.negative[0].first == cls(lat, {0, 0, 1}));
  CHECK(z.negative[0].second == Q(2));
  CHECK(z.negative[1].first == cls(lat, {0, 1, 0}));
  CHECK(z.negative[1].second == Q(1));
  check_zariski_invariants(d, z, curves);

  // The same input with the curve list permuted gives the same answer.
  NegativeCurveSet permuted({cls(lat, {0, 0, 1}), cls(lat, {0, 1, 0})});
  auto zp = zariski_decomposition(d, permuted, eff);
  CHECK(zp.positive == z.positive);
  REQUIRE(zp.negative.size() == 2);
  CHECK(zp.negative[0].first == z.negative[0].first);
  CHECK(zp.negative[1].first == z.negative[1].first);
}

TEST_CASE("zariski decomposition rejects inconsistent candidate data") {
  auto lat = blowup_lattice();

  // Empty candidate list but a visibly non-nef divisor.
  CHECK_THROWS_WITH_AS(
      zariski_decomposition(cls(lat, {2, 1}), NegativeCurveSet(), blowup_eff(lat)),
      "candidate list insufficient", PreconditionError);

  // A candidate with positive self-intersection entering the support.
  auto eff_neg = RationalCone::from_generators({cls(lat, {-1, 0}), cls(lat, {0, 1})});
  CHECK_THROWS_WITH_AS(
      zariski_decomposition(cls(lat, {-1, 0}), NegativeCurveSet({cls(lat, {1, 0})}), eff_neg),
      "inconsistent curve data", PreconditionError);

  // Support growth driving a solved coefficient nonpositive.
  auto lat3 = diag_lattice(3);
  auto eff3 = RationalCone::from_generators(
      {cls(lat3, {1, 0, 0}), cls(lat3, {0, 1, 0}), cls(lat3, {0, 0, 1})});
  NegativeCurveSet overlapping({cls(lat3, {0, 1, 0}), cls(lat3, {0, 1, 1})});
  CHECK_THROWS_WITH_AS(zariski_decomposition(cls(lat3, {3, 1, 2}), overlapping, eff3),
                       "candidate list not irreducible-consistent", PreconditionError);
}

TEST_CASE("zariski invariants hold on random effective divisors") {
  TestRng rng(601);
  for (int trial = 0; trial < 40; ++trial) {
    int rank = static_cast<int>(rng.ll(2, 4));
    auto lat = diag_lattice(rank);
    std::vector<NumClass> gens;
    for (int i = 0; i < rank; ++i) {
      RatVec v(rank, Q(0));
      v[i] = Q(1);
      gens.push_back(NumClass(lat, v));
    }
    auto eff = RationalCone::from_generators(gens);
    std::vector<NumClass> curve_list;
    for (int i = 1; i < rank; ++i) {
      RatVec v(rank, Q(0));
      v[i] = Q(1);
      curve_list.push_back(NumClass(lat, v));
    }
    NegativeCurveSet curves(curve_list);

    // Random nonnegative combination of the generators stays effective.
    NumClass d = cls(lat, std::vector<long long>(rank, 0));
    for (const auto& g : gens) d = d + Q(rng.ll(0, 5)) * g;
    auto z = zariski_decomposition(d, curves, eff);
    check_zariski_invariants(d, z, curves);

    auto again = zariski_decomposition(z.positive, curves, eff);
    CHECK(again.positive == z.positive);
    CHECK(again.negative.empty());
  }
}

TEST_CASE("zero-square divisors orthogonal to movable classes certify nef") {
  auto lat = quadric_lattice();
  auto eff = quadrant_cone(lat);
  NegativeCurveSet none;

  auto res = nef_from_zero_square(cls(lat, {1, 0}), cls(lat, {1, 0}), none, eff);
  CHECK(res.verdict == NefVerdict::Nef);
  CHECK(res.pair.negative.empty());
  CHECK(res.pair.positive == cls(lat, {1, 0}));

  auto zero = nef_from_zero_square(cls(lat, {0, 0}), cls(lat, {1, 0}), none, eff);
  CHECK(zero.verdict == NefVerdict::Nef);

  auto bl = blowup_lattice();
  CHECK_THROWS_WITH_AS(
      nef_from_zero_square(cls(bl, {0, 1}), cls(bl, {1, 0}), none, blowup_eff(bl)),
      "divisor self-intersection is nonzero", PreconditionError);
  CHECK_THROWS_WITH_AS(
      nef_from_zero_square(cls(lat, {1, 0}), cls(lat, {0, 0}), none, eff),
      "polarization is zero", PreconditionError);
  CHECK_THROWS_WITH_AS(
      nef_from_zero_square(cls(lat, {1, 0}), cls(lat, {-1, 2}), none, eff),
      "polarization not movable", PreconditionError);
  CHECK_THROWS_WITH_AS(
      nef_from_zero_square(cls(lat, {1, 0}), cls(lat, {1, 1}), none, eff),
      "polarization not orthogonal to the divisor", PreconditionError);
  CHECK_THROWS_WITH_AS(
      nef_from_zero_square(cls(lat, {-1, 0}), cls(lat, {1, 0}), none, eff),
      "divisor not pseudo-effective", PreconditionError);
}

TEST_CASE("zero-square gate flags lying cone data as inconsistent") {
  // The declared effective cone pretends (-1,-1) is movable; the candidate
  // list then produces a nonzero negative part, which a nef certificate
  // cannot coexist with.
  auto lat = blowup_lattice();
  auto eff = RationalCone::from_generators({cls(lat, {1, 1}), cls(lat, {0, 1})});
  NegativeCurveSet curves({cls(lat, {0, 1})});

  auto res = nef_from_zero_square(cls(lat, {1, 1}), cls(lat, {-1, -1}), curves, eff);
  CHECK(res.verdict == NefVerdict::InputInconsistent);
  REQUIRE(res.pair.negative.size() == 1);
  CHECK(res.pair.negative[0].first == cls(lat, {0, 1}));
  CHECK(res.pair.negative[0].second == Q(1));
  CHECK(res.pair.positive == cls(lat, {1, 0}));
}

TEST_CASE("effectivity trichotomy on the blow-up") {
  auto lat = blowup_lattice();
  auto eff = blowup_eff(lat);
  auto nef = eff.dual();

  auto ortho = effectivity_classifier(cls(lat, {1, -2}), nef, eff);
  CHECK(ortho.kind == EffectivityResult::Kind::AmpleOrthogonal);
  REQUIRE(ortho.witness.has_value());
  CHECK(*ortho.witness == cls(lat, {2, -1}));
  CHECK(pairing(*ortho.witness, cls(lat, {1, -2})) == 0);
  CHECK(nef.contains(*ortho.witness, RationalCone::Mode::Interior));

  auto plus = effectivity_classifier(cls(lat, {0, 1}), nef, eff);
  CHECK(plus.kind == EffectivityResult::Kind::PseudoEffectivePlus);
  CHECK_FALSE(plus.witness.has_value());

  auto minus = effectivity_classifier(cls(lat, {0, -1}), nef, eff);
  CHECK(minus.kind == EffectivityResult::Kind::PseudoEffectiveMinus);

  auto degen = effectivity_classifier(cls(lat, {0, 0}), nef, eff);
  CHECK(degen.kind == EffectivityResult::Kind::DegenerateZero);

  // A class pairing with both signs whose witness needs the mixing step.
  auto mixed = effectivity_classifier(cls(lat, {1, -3}), nef, eff);
  CHECK(mixed.kind == EffectivityResult::Kind::AmpleOrthogonal);
  REQUIRE(mixed.witness.has_value());
  CHECK(*mixed.witness == cls(lat, {3, -1}));
  CHECK(pairing(*mixed.witness, cls(lat, {1, -3})) == 0);
  CHECK(nef.contains(*mixed.witness, RationalCone::Mode::Interior));

  // Witnesses are primitive integer classes.
  CHECK(rat_vec_is_integer(mixed.witness->coords()));
}

TEST_CASE("effectivity classifier rejects inconsistent cone pairs") {
  auto lat = blowup_lattice();
  auto nef = RationalCone::from_generators({cls(lat, {1, 0}), cls(lat, {1, -1})});
  auto tiny_eff = RationalCone::from_generators({cls(lat, {0, 1})});

  CHECK_THROWS_WITH_AS(
      effectivity_classifier(cls(lat, {1, 0}), nef, tiny_eff),
      "cones inconsistent: functional nonnegative on nef but class not pseudo-effective",
      PreconditionError);
  CHECK_THROWS_WITH_AS(
      effectivity_classifier(cls(lat, {-1, 0}), nef, tiny_eff),
      "cones inconsistent: functional nonpositive on nef but negated class not pseudo-effective",
      PreconditionError);

  auto ray = RationalCone::from_generators({cls(lat, {1, 0})});
  CHECK_THROWS_WITH_AS(effectivity_classifier(cls(lat, {0, 1}), ray, tiny_eff),
                       "cone not full-dimensional", PreconditionError);
}

TEST_CASE("discriminant consistency verdicts") {
  auto lat = quadric_lattice();
  auto mov = quadrant_cone(lat);
  NumClass diag = cls(lat, {1, 1});

  auto running = bgi_verdict(running_family(lat), diag, mov);
  CHECK(running.discriminant == Q(2));
  CHECK(running.semistable);
  CHECK_FALSE(running.equality);
  CHECK(running.consistent);
  CHECK(running.status == "consistent");

  SubsheafFamily ruled(SheafClass(2, cls(lat, {0, 0}), Q(0)),
                       {SheafClass(1, cls(lat, {1, 0}), Q(0)),
                        SheafClass(1, cls(lat, {-1, 0}), Q(0))},
                       {}, true);
  auto boundary = bgi_verdict(ruled, cls(lat, {1, 0}), mov);
  CHECK(boundary.discriminant == Q(0));
  CHECK(boundary.semistable);
  CHECK(boundary.equality);
  CHECK(boundary.consistent);

  SubsheafFamily bogus(SheafClass(2, cls(lat, {1, -1}), Q(-2)), {}, {}, true);
  auto bad = bgi_verdict(bogus, diag, mov);
  CHECK(bad.discriminant == Q(-6));
  CHECK(bad.semistable);  // vacuously
  CHECK_FALSE(bad.consistent);
  CHECK(bad.status == "FAMILY-INCOMPLETE-OR-NONGEOMETRIC");

  CHECK_THROWS_WITH_AS(bgi_verdict(running_family(lat), cls(lat, {0, 0}), mov),
                       "polarization is zero", PreconditionError);
}

TEST_CASE("surface flatness gate names the first failing condition") {
  auto lat = quadric_lattice();
  auto mov = quadrant_cone(lat);
  NumClass diag = cls(lat, {1, 1});

  auto not_movable = flatness_surface(running_family(lat), cls(lat, {-1, 0}), mov);
  CHECK_FALSE(not_movable.certified);
  CHECK(not_movable.verdict == "not certified: α not movable");

  auto slope_fails = flatness_surface(running_family(lat), diag, mov);
  CHECK(slope_fails.verdict == "not certified: c1 · α != 0");

  SubsheafFamily chern_off(SheafClass(2, cls(lat, {1, -1}), Q(0)), {}, {}, true);
  CHECK(flatness_surface(chern_off, diag, mov).verdict == "not certified: c1^2 - c2 != 0");

  SubsheafFamily ruled(SheafClass(2, cls(lat, {0, 0}), Q(0)),
                       {SheafClass(1, cls(lat, {1, 0}), Q(0)),
                        SheafClass(1, cls(lat, {-1, 0}), Q(0))},
                       {}, true);
  auto isotropic = flatness_surface(ruled, cls(lat, {1, 0}), mov);
  CHECK_FALSE(isotropic.certified);
  CHECK(isotropic.verdict == "not certified: α² = 0");
  CHECK_FALSE(isotropic.derivation.has_value());

  // Negative-square movable class (against a deliberately skew cone).
  auto bl = blowup_lattice();
  auto skew = RationalCone::from_generators({cls(bl, {0, -1})});
  SubsheafFamily neg_fam(SheafClass(2, cls(bl, {1, 0}), Q(1)), {}, {}, true);
  CHECK(flatness_surface(neg_fam, cls(bl, {0, -1}), skew).verdict ==
        "not certified: α² < 0");

  SubsheafFamily unstable(SheafClass(2, cls(lat, {0, 0}), Q(0)),
                          {SheafClass(1, cls(lat, {1, 0}), Q(0))}, {}, true);
  CHECK(flatness_surface(unstable, diag, mov).verdict == "not certified: not semistable");

  SubsheafFamily inconsistent(SheafClass(2, cls(lat, {1, -1}), Q(-2)), {}, {}, true);
  auto flagged = flatness_surface(inconsistent, diag, mov);
  CHECK_FALSE(flagged.certified);
  CHECK(flagged.verdict == "inconsistent family data");

  SubsheafFamily trivial(SheafClass(2, cls(lat, {0, 0}), Q(0)), {}, {}, true);
  auto good = flatness_surface(trivial, diag, mov);
  CHECK(good.certified);
  CHECK(good.verdict == "flat-certified");
  REQUIRE(good.derivation.has_value());
  CHECK(good.derivation->c1_square == Q(0));
  CHECK(good.derivation->c2 == Q(0));
  CHECK(good.derivation->c1_zero);
}

TEST_CASE("projective flatness gate with refinements") {
  auto lat = quadric_lattice();
  auto cone = quadrant_cone(lat);
  NegativeCurveSet none;

  SubsheafFamily trivial(SheafClass(2, cls(lat, {0, 0}), Q(0)), {}, {}, true);
  auto forced = proj_flatness_surface(trivial, cls(lat, {1, 1}), cone, cone, none);
  CHECK(forced.certified);
  CHECK(forced.verdict == "projectively-flat-certified");
  CHECK(forced.refinement == "flat (c1 = 0 forced)");

  SubsheafFamily nef_case(SheafClass(2, cls(lat, {1, 0}), Q(0)), {}, {}, true);
  auto enef = proj_flatness_surface(nef_case, cls(lat, {1, 0}), cone, cone, none);
  CHECK(enef.certified);
  CHECK(enef.refinement == "E nef");

  SubsheafFamily dual_case(SheafClass(2, cls(lat, {-1, 0}), Q(0)), {}, {}, true);
  auto edual = proj_flatness_surface(dual_case, cls(lat, {1, 0}), cone, cone, none);
  CHECK(edual.certified);
  CHECK(edual.refinement == "E^* nef");

  SubsheafFamily off(SheafClass(2, cls(lat, {1, 1}), Q(1)), {}, {}, true);
  auto fails = proj_flatness_surface(off, cls(lat, {1, 1}), cone, cone, none);
  CHECK_FALSE(fails.certified);
  CHECK(fails.verdict == "equality fails");
  CHECK(fails.refinement.empty());

  // Certified but with nonzero c1 . alpha: no refinement is attempted.
  SubsheafFamily no_refine(SheafClass(2, cls(lat, {2, 0}), Q(0)), {}, {}, true);
  auto plain = proj_flatness_surface(no_refine, cls(lat, {0, 1}), cone, cone, none);
  CHECK(plain.certified);
  CHECK(plain.refinement.empty());

  CHECK_THROWS_WITH_AS(
      proj_flatness_surface(running_family(lat), cls(lat, {1, 1}), cone, cone, none),
      "family not stable at the polarization", PreconditionError);
  CHECK_THROWS_WITH_AS(
      proj_flatness_surface(trivial, cls(lat, {-1, 0}), cone, cone, none),
      "polarization not movable", PreconditionError);
  CHECK_THROWS_WITH_AS(proj_flatness_surface(trivial, cls(lat, {0, 0}), cone, cone, none),
                       "polarization is zero", PreconditionError);
}

TEST_CASE("projective flatness reports lying input data") {
  auto lat = blowup_lattice();
  auto eff = RationalCone::from_generators({cls(lat, {1, 1}), cls(lat, {0, 1})});
  auto nef = RationalCone::from_generators({cls(lat, {-1, -1}), cls(lat, {0, -1})});
  NegativeCurveSet curves({cls(lat, {0, 1})});

  SubsheafFamily fam(SheafClass(2, cls(lat, {1, 1}), Q(0)), {}, {}, true);
  auto res = proj_flatness_surface(fam, cls(lat, {-1, -1}), nef, eff, curves);
  CHECK(res.certified);
  CHECK(res.refinement == "counterexample-to-input-consistency");
}

TEST_CASE("higher-dimensional flatness gate") {
  auto pass = flatness_higher(3, Q(0), Q(0), Q(0), 2);
  CHECK(pass.passed);
  CHECK(pass.verdict == "gate-passed");
  CHECK(pass.vanish_c1H);
  CHECK(pass.vanish_difference);
  REQUIRE(pass.lambda.has_value());
  CHECK(pass.lambda->value_lambda1 == Q(0));
  CHECK(pass.lambda->value_lambda2 == Q(0));
  REQUIRE(pass.lambda->upper_bound.has_value());
  CHECK(*pass.lambda->upper_bound == Q(4));

  // Nonzero but matching capped numbers still pass the difference test.
  auto matching = flatness_higher(3, Q(0), Q(-3), Q(-3), 2);
  CHECK(matching.passed);
  CHECK(matching.lambda->value_lambda1 == Q(0));
  CHECK(matching.lambda->value_lambda2 == Q(3));

  auto fail1 = flatness_higher(2, Q(1), Q(0), Q(0), 2);
  CHECK_FALSE(fail1.passed);
  CHECK(fail1.verdict == "fails: c1.H^(n-1) != 0");

  auto fail2 = flatness_higher(2, Q(0), Q(5), Q(1), 2);
  CHECK_FALSE(fail2.passed);
  CHECK(fail2.verdict == "fails: (c1^2 - c2).H^(n-2) != 0");

  // Rank one: no lambda upper bound.
  auto rank1 = flatness_higher(2, Q(0), Q(0), Q(0), 1);
  CHECK(rank1.passed);
  REQUIRE(rank1.lambda.has_value());
  CHECK_FALSE(rank1.lambda->upper_bound.has_value());

  // Without a rank there is no lambda report at all.
  auto norank = flatness_higher(2, Q(0), Q(0), Q(0));
  CHECK(norank.passed);
  CHECK_FALSE(norank.lambda.has_value());

  CHECK_THROWS_WITH_AS(flatness_higher(1, Q(0), Q(0), Q(0)), "dimension must be at least 2",
                       PreconditionError);
  CHECK_THROWS_WITH_AS(flatness_higher(3, Q(0), Q(0), Q(0), 0), "rank must be at least 1",
                       PreconditionError);
}

TEST_CASE("lambda variants vanish together under the numeric hypotheses") {
  // With discriminant >= 0 and c1^2 capped nonpositive, vanishing of one
  // lambda variant in (0, 2r/(r-1)) forces both capped numbers to zero.
  TestRng rng(602);
  for (int trial = 0; trial < 100; ++trial) {
    int r = static_cast<int>(rng.ll(2, 5));
    Rational c1sq = Q(-rng.ll(0, 6));
    Rational c2 = rng.rat(-6, 6);
    Rational disc = Q(2 * r) * c2 - Q(r - 1) * c1sq;
    if (disc < 0) continue;
    auto rep = flatness_higher(3, Q(0), c1sq, c2, r);
    REQUIRE(rep.lambda.has_value());
    bool vanish1 = rep.lambda->value_lambda1 == 0;
    bool vanish2 = rep.lambda->value_lambda2 == 0;
    if (vanish1 || vanish2) {
      CHECK(c1sq == 0);
      CHECK(c2 == 0);
      CHECK(vanish1);
      CHECK(vanish2);
    }
  }
  // The forced instance: both capped numbers zero vanish at every lambda.
  auto zero = flatness_higher(4, Q(0), Q(0), Q(0), 3);
  CHECK(zero.lambda->value_lambda1 == 0);
  CHECK(zero.lambda->value_lambda2 == 0);
  CHECK(*zero.lambda->upper_bound == Q(3));
}

TEST_CASE("torus quotient gate") {
  auto met = torus_quotient_gate(3, Q(0), true);
  CHECK(met.met);
  CHECK(met.verdict == "hypotheses-met");
  CHECK(met.c2_vanishes);
  CHECK(met.kx_trivial);

  auto c2_bad = torus_quotient_gate(3, Q(5), true);
  CHECK_FALSE(c2_bad.met);
  CHECK(c2_bad.verdict == "fails: c2.H^(n-2) != 0");

  auto kx_bad = torus_quotient_gate(2, Q(0), false);
  CHECK_FALSE(kx_bad.met);
  CHECK(kx_bad.verdict == "fails: canonical class not numerically trivial");

  CHECK_THROWS_WITH_AS(torus_quotient_gate(1, Q(0), true), "dimension must be at least 2",
                       PreconditionError);
}
