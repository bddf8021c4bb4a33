#include "movstab/stability.hpp"

#include <algorithm>
#include <cassert>

#include "movstab/errors.hpp"

namespace movstab {

SubsheafFamily::SubsheafFamily(SheafClass top_in, std::vector<SheafClass> members_in,
                               std::vector<std::pair<int, int>> contains_in, bool saturated_in)
    : top(std::move(top_in)),
      members(std::move(members_in)),
      contains(std::move(contains_in)),
      saturated(saturated_in) {
  const int n = static_cast<int>(members.size());
  for (const SheafClass& m : members) {
    if (!same_lattice(m.c1.lattice(), top.c1.lattice()))
      throw PreconditionError("incompatible lattices");
    if (m.rank > top.rank)
      throw PreconditionError("member rank exceeds top rank");
  }
  for (const auto& [i, j] : contains) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw PreconditionError("containment edge references a missing member");
    if (members[i].rank >= members[j].rank)
      throw PreconditionError("containment edge does not increase rank");
  }
  if (saturated) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (members[i].rank == members[j].rank && members[i].c1 == members[j].c1)
          throw PreconditionError("saturated family has members with identical (rank, c1)");
  }
}

Rational slope(const SheafClass& e, const NumClass& alpha) {
  return pairing(e.c1, alpha) / e.rank;
}

namespace {

void require_movable(const RationalCone& mov, const NumClass& alpha) {
  if (!mov.contains(alpha, RationalCone::Mode::Closed))
    throw PreconditionError("polarization not movable");
}

const SheafClass& class_at(const SubsheafFamily& fam, int idx) {
  return idx == kTopIndex ? fam.top : fam.members[idx];
}

// Maximizing key: (slope, rank, lex-smallest c1).  Returns -1/0/+1 as the
// challenger (s2, r2, c2) loses/ties/beats the incumbent.
int compare_key(const Rational& s1, int r1, const RatVec& c1, const Rational& s2, int r2,
                const RatVec& c2) {
  if (s2 != s1) return s2 > s1 ? 1 : -1;
  if (r2 != r1) return r2 > r1 ? 1 : -1;
  if (c2 != c1) return rat_lex_less(c2, c1) ? 1 : -1;
  return 0;
}

SlopeExtremum extremum_over(const SubsheafFamily& fam, const NumClass& alpha,
                            const std::vector<int>& candidates) {
  assert(!candidates.empty());
  SlopeExtremum best{slope(class_at(fam, candidates[0]), alpha), candidates[0], false};
  for (size_t k = 1; k < candidates.size(); ++k) {
    const int idx = candidates[k];
    const SheafClass& c = class_at(fam, idx);
    const SheafClass& incumbent = class_at(fam, best.witness);
    const Rational s = slope(c, alpha);
    const int cmp = compare_key(best.value, incumbent.rank, incumbent.c1.coords(), s, c.rank,
                                c.c1.coords());
    if (cmp > 0) {
      best = {s, idx, false};
    } else if (cmp == 0) {
      best.ambiguous = true;  // identical (slope, rank, c1); keep the earlier one
    }
  }
  return best;
}

}  // namespace

SlopeExtremum mu_max(const SubsheafFamily& fam, const NumClass& alpha, const RationalCone& mov) {
  require_movable(mov, alpha);
  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(fam.members.size()); ++i) candidates.push_back(i);
  candidates.push_back(kTopIndex);
  return extremum_over(fam, alpha, candidates);
}

SlopeExtremum mu_max_sc(const SubsheafFamily& fam, const NumClass& alpha,
                        const RationalCone& mov) {
  require_movable(mov, alpha);
  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(fam.members.size()); ++i)
    if (fam.members[i].rank < fam.top.rank) candidates.push_back(i);
  if (candidates.empty()) throw PreconditionError("empty strict family");
  return extremum_over(fam, alpha, candidates);
}

bool is_semistable(const SubsheafFamily& fam, const NumClass& alpha, const RationalCone& mov) {
  return mu_max(fam, alpha, mov).value <= slope(fam.top, alpha);
}

bool is_stable(const SubsheafFamily& fam, const NumClass& alpha, const RationalCone& mov) {
  require_movable(mov, alpha);
  bool any_strict = false;
  for (const SheafClass& m : fam.members)
    if (m.rank < fam.top.rank) {
      any_strict = true;
      break;
    }
  if (!any_strict) return true;  // vacuously stable
  return mu_max_sc(fam, alpha, mov).value < slope(fam.top, alpha);
}

std::vector<int> destabilizer_filter(const SubsheafFamily& fam, const NumClass& beta,
                                     const Rational& threshold, const RationalCone& mov) {
  require_movable(mov, beta);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(fam.members.size()); ++i)
    if (slope(fam.members[i], beta) >= threshold) out.push_back(i);
  return out;
}

namespace {

// Quotient class of step small -> big, with c2 recovered from the extension
// rule so that whitney_extension(small, quotient) == big.
SheafClass quotient_class(const SheafClass& big, const SheafClass& small) {
  const int r = big.rank - small.rank;
  assert(r >= 1);
  const NumClass c1 = big.c1 - small.c1;
  const Rational c2 = big.c2 - small.c2 - pairing(small.c1, c1);
  return SheafClass(r, c1, c2);
}

}  // namespace

Filtration hn_filtration(const SubsheafFamily& fam, const NumClass& alpha,
                         const RationalCone& mov) {
  require_movable(mov, alpha);
  const int n = static_cast<int>(fam.members.size());

  // Explicit successor lists; the top is always an implicit successor.
  std::vector<std::vector<int>> succ(n);
  for (const auto& [i, j] : fam.contains) succ[i].push_back(j);

  Filtration out;
  int cur = -2;  // bottom sentinel
  int cur_rank = 0;
  NumClass cur_c1 = Rational(0) * fam.top.c1;
  Rational cur_c2(0);

  while (cur != kTopIndex) {
    std::vector<int> candidates;
    if (cur == -2) {
      for (int i = 0; i < n; ++i) candidates.push_back(i);
    } else {
      candidates = succ[cur];
    }
    // A member that cannot be extended to the top with positive quotient
    // rank can never appear in a chain.
    std::vector<int> usable;
    for (int idx : candidates)
      if (fam.members[idx].rank > cur_rank && fam.members[idx].rank < fam.top.rank)
        usable.push_back(idx);
    usable.push_back(kTopIndex);

    int best = kTopIndex;
    Rational best_slope;
    bool have = false;
    for (int idx : usable) {
      const SheafClass& c = class_at(fam, idx);
      const Rational s = pairing(c.c1 - cur_c1, alpha) / (c.rank - cur_rank);
      if (!have) {
        best = idx;
        best_slope = s;
        have = true;
        continue;
      }
      const SheafClass& inc = class_at(fam, best);
      const int cmp = compare_key(best_slope, inc.rank, inc.c1.coords(), s, c.rank, c.c1.coords());
      if (cmp > 0) {
        best = idx;
        best_slope = s;
      } else if (cmp == 0) {
        out.ambiguous = true;
      }
    }

    const SheafClass& chosen = class_at(fam, best);
    const SheafClass prefix_quotient =
        cur == -2 ? chosen : quotient_class(chosen, SheafClass(cur_rank, cur_c1, cur_c2));
    out.steps.push_back(best);
    out.quotients.push_back(prefix_quotient);
    out.slopes.push_back(best_slope);
    cur = best;
    cur_rank = chosen.rank;
    cur_c1 = chosen.c1;
    cur_c2 = chosen.c2;
  }

  out.strictly_decreasing = true;
  for (size_t i = 1; i < out.slopes.size(); ++i) {
    if (out.slopes[i] > out.slopes[i - 1])
      throw PreconditionError(
          "family DAG not filtration-closed: quotient slopes increase along the greedy chain");
    if (out.slopes[i] == out.slopes[i - 1]) out.strictly_decreasing = false;
  }
  return out;
}

Filtration jh_filtration(const SubsheafFamily& fam, const NumClass& alpha,
                         const RationalCone& mov) {
  if (!is_semistable(fam, alpha, mov))
    throw PreconditionError("family not semistable at the polarization");
  const Rational mu = slope(fam.top, alpha);
  const int n = static_cast<int>(fam.members.size());

  std::vector<int> eligible;
  for (int i = 0; i < n; ++i)
    if (fam.members[i].rank < fam.top.rank && slope(fam.members[i], alpha) == mu)
      eligible.push_back(i);

  if (eligible.empty()) {
    if (!is_stable(fam, alpha, mov)) throw PreconditionError("family not JH-closed");
    Filtration out;
    out.steps = {kTopIndex};
    out.quotients = {fam.top};
    out.slopes = {mu};
    out.strictly_decreasing = true;
    return out;
  }

  // Longest equal-slope chain via DP over the containment order (chains may
  // start at any eligible member and always end at the top).
  std::vector<std::vector<int>> pred(n);
  for (const auto& [i, j] : fam.contains) pred[j].push_back(i);
  std::vector<int> order = eligible;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (fam.members[a].rank != fam.members[b].rank)
      return fam.members[a].rank < fam.members[b].rank;
    return a < b;
  });
  std::vector<int> len(n, 0), parent(n, -2);
  std::vector<bool> is_eligible(n, false);
  for (int i : eligible) is_eligible[i] = true;
  for (int i : order) {
    len[i] = 1;
    parent[i] = -2;
    for (int p : pred[i]) {
      if (!is_eligible[p]) continue;
      if (len[p] + 1 > len[i] || (len[p] + 1 == len[i] && p < parent[i])) {
        len[i] = len[p] + 1;
        parent[i] = p;
      }
    }
  }
  int end = order[0];
  for (int i : order)
    if (len[i] > len[end] || (len[i] == len[end] && i < end)) end = i;

  std::vector<int> chain;
  for (int i = end; i != -2; i = parent[i]) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());
  chain.push_back(kTopIndex);

  Filtration out;
  int cur_rank = 0;
  NumClass cur_c1 = Rational(0) * fam.top.c1;
  Rational cur_c2(0);
  bool first = true;
  for (int idx : chain) {
    const SheafClass& c = class_at(fam, idx);
    SheafClass q = first ? c : quotient_class(c, SheafClass(cur_rank, cur_c1, cur_c2));
    out.steps.push_back(idx);
    out.slopes.push_back(slope(q, alpha));
    out.quotients.push_back(std::move(q));
    cur_rank = c.rank;
    cur_c1 = c.c1;
    cur_c2 = c.c2;
    first = false;
  }
  for (const Rational& s : out.slopes)
    if (s != mu) throw InvariantError("equal-slope chain has a quotient of different slope");
  out.strictly_decreasing = out.slopes.size() <= 1;
  return out;
}

Rational openness_epsilon(const SubsheafFamily& fam, const NumClass& a, const NumClass& b,
                          const RationalCone& mov) {
  require_movable(mov, b);
  if (!is_stable(fam, a, mov))
    throw PreconditionError("family not stable at the base polarization");

  bool any_strict = false;
  for (const SheafClass& m : fam.members)
    if (m.rank < fam.top.rank) {
      any_strict = true;
      break;
    }
  if (!any_strict) return Rational(1);

  const Rational d = slope(fam.top, a) - mu_max_sc(fam, a, mov).value;  // > 0 by stability
  Rational g = mu_max(fam, b, mov).value - slope(fam.top, b);
  if (g < 0) g = 0;
  const Rational e = d / (d + g);

  // Spot-check the guarantee strictly inside the radius.
  const Rational probe = e / 2;
  if (!is_stable(fam, segment(a, b, probe), mov))
    throw InvariantError("stability radius probe failed");
  return e;
}

bool IntervalQ::contains(const Rational& t) const {
  if (empty) return false;
  if (t < lo || t > hi) return false;
  if (t == lo && lo_open) return false;
  if (t == hi && hi_open) return false;
  return true;
}

namespace {

// Intersects the constraint {t : c0 + t (c1 - c0) >= 0} (or > 0) into the
// interval, where the affine function is given by endpoint values c0, c1.
void intersect_affine(IntervalQ& iv, const Rational& v0, const Rational& v1, bool strict) {
  if (iv.empty) return;
  const Rational d = v1 - v0;
  if (d == 0) {
    const bool ok = strict ? v0 > 0 : v0 >= 0;
    if (!ok) iv.empty = true;
    return;
  }
  const Rational root = -v0 / d;  // v0 + t d = 0
  if (d > 0) {
    // t >= root (or > root)
    if (root > iv.lo || (root == iv.lo && strict && !iv.lo_open)) {
      iv.lo = root;
      iv.lo_open = strict;
    } else if (root == iv.lo && strict) {
      iv.lo_open = true;
    }
  } else {
    if (root < iv.hi || (root == iv.hi && strict && !iv.hi_open)) {
      iv.hi = root;
      iv.hi_open = strict;
    } else if (root == iv.hi && strict) {
      iv.hi_open = true;
    }
  }
  if (iv.lo > iv.hi || (iv.lo == iv.hi && (iv.lo_open || iv.hi_open))) iv.empty = true;
}

}  // namespace

PointClass classify_point(const SubsheafFamily& fam, const NumClass& alpha,
                          const RationalCone& mov) {
  if (!is_semistable(fam, alpha, mov)) return PointClass::Unstable;
  return is_stable(fam, alpha, mov) ? PointClass::Stable : PointClass::StrictlySemistable;
}

SegmentReport segment_stability(const SubsheafFamily& fam, const NumClass& a, const NumClass& b,
                                const RationalCone& mov) {
  require_movable(mov, a);
  require_movable(mov, b);

  SegmentReport rep;
  rep.semistable = IntervalQ{false, Rational(0), Rational(1), false, false};
  rep.stable = IntervalQ{false, Rational(0), Rational(1), false, false};

  for (int i = 0; i < static_cast<int>(fam.members.size()); ++i) {
    const SheafClass& m = fam.members[i];
    // g(eps) = slope(top) - slope(member) at (1-eps) a + eps b, affine in eps.
    const Rational g0 = slope(fam.top, a) - slope(m, a);
    const Rational g1 = slope(fam.top, b) - slope(m, b);
    intersect_affine(rep.semistable, g0, g1, /*strict=*/false);
    if (m.rank < fam.top.rank) intersect_affine(rep.stable, g0, g1, /*strict=*/true);
    if (g0 != g1) {
      const Rational root = -g0 / (g1 - g0);
      if (root >= 0 && root <= 1) rep.walls.push_back({i, root});
    }
  }
  rep.at_start = classify_point(fam, a, mov);
  rep.at_end = classify_point(fam, b, mov);
  return rep;
}

std::vector<Wall> wall_hyperplanes(const SubsheafFamily& fam) {
  std::vector<Wall> out;
  for (int i = 0; i < static_cast<int>(fam.members.size()); ++i) {
    const SheafClass& m = fam.members[i];
    if (m.rank >= fam.top.rank) continue;
    const NumClass w =
        Rational(1, m.rank) * m.c1 - Rational(1, fam.top.rank) * fam.top.c1;
    if (w.is_zero()) continue;
    out.push_back({i, w});
  }
  return out;
}

}  // namespace movstab
