#include "movstab/cone.hpp"

#include <algorithm>
#include <cassert>

#include "movstab/errors.hpp"

namespace movstab {

namespace {

struct DDResult {
  std::vector<RatVec> rays;
  std::vector<RatVec> lineality;
};

bool vec_is_zero(const RatVec& v) {
  for (const Rational& q : v)
    if (q != 0) return false;
  return true;
}

void dedupe_primitive(std::vector<RatVec>& vs) {
  std::vector<RatVec> out;
  for (RatVec& v : vs) {
    RatVec p = primitive_integer(v);
    bool seen = false;
    for (const RatVec& o : out)
      if (o == p) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(p));
  }
  vs = std::move(out);
}

// Extreme rays of the pointed cone {z : rows . z >= 0} (full column rank
// required).  Incremental double description with the algebraic adjacency
// test: two rays are adjacent iff their common tight constraints have rank
// dim - 2.
std::vector<RatVec> pointed_dd(const RatMat& rows, int dim) {
  const int m = static_cast<int>(rows.size());
  assert(dim > 0);

  // Initial simplicial cone from dim linearly independent rows.
  std::vector<int> base;
  RatMat picked;
  for (int i = 0; i < m && static_cast<int>(base.size()) < dim; ++i) {
    picked.push_back(rows[i]);
    if (rat_rank(picked) == static_cast<int>(base.size()) + 1)
      base.push_back(i);
    else
      picked.pop_back();
  }
  if (static_cast<int>(base.size()) != dim)
    throw InvariantError("pointed cone constraints are rank deficient");
  const auto inv = rat_inverse(picked);
  if (!inv) throw InvariantError("independent constraint rows not invertible");

  std::vector<RatVec> rays;
  for (int j = 0; j < dim; ++j) {
    RatVec r(dim);
    for (int i = 0; i < dim; ++i) r[i] = (*inv)[i][j];
    rays.push_back(primitive_integer(r));
  }

  std::vector<int> processed = base;
  auto dot = [&](int row, const RatVec& r) {
    Rational acc(0);
    for (int j = 0; j < dim; ++j) acc += rows[row][j] * r[j];
    return acc;
  };
  auto adjacent = [&](const RatVec& r1, const RatVec& r2) {
    RatMat tight;
    for (int idx : processed)
      if (dot(idx, r1) == 0 && dot(idx, r2) == 0) tight.push_back(rows[idx]);
    return rat_rank(std::move(tight)) == dim - 2;
  };

  for (int i = 0; i < m; ++i) {
    if (std::find(processed.begin(), processed.end(), i) != processed.end()) continue;
    std::vector<RatVec> pos, zero, neg;
    std::vector<Rational> pos_val, neg_val;
    for (const RatVec& r : rays) {
      const Rational v = dot(i, r);
      if (v > 0) {
        pos.push_back(r);
        pos_val.push_back(v);
      } else if (v < 0) {
        neg.push_back(r);
        neg_val.push_back(v);
      } else {
        zero.push_back(r);
      }
    }
    if (neg.empty()) {
      processed.push_back(i);
      continue;
    }
    std::vector<RatVec> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (size_t p = 0; p < pos.size(); ++p)
      for (size_t q = 0; q < neg.size(); ++q) {
        if (!adjacent(pos[p], neg[q])) continue;
        RatVec comb(dim);
        for (int j = 0; j < dim; ++j)
          comb[j] = pos_val[p] * neg[q][j] - neg_val[q] * pos[p][j];
        next.push_back(primitive_integer(comb));
      }
    dedupe_primitive(next);
    rays = std::move(next);
    processed.push_back(i);
  }
  return rays;
}

// V-description of {y : rows . y >= 0}: extreme rays plus a lineality basis.
DDResult dual_description(const RatMat& rows, int dim) {
  DDResult res;
  RatMat nonzero_rows;
  for (const RatVec& r : rows)
    if (!vec_is_zero(r)) nonzero_rows.push_back(r);
  if (nonzero_rows.empty()) {
    for (int i = 0; i < dim; ++i) {
      RatVec e(dim, Rational(0));
      e[i] = 1;
      res.lineality.push_back(std::move(e));
    }
    return res;
  }
  res.lineality = rat_kernel_basis(nonzero_rows);
  const int lin_dim = static_cast<int>(res.lineality.size());
  const int d = dim - lin_dim;
  if (d == 0) return res;

  // Pointed part: restrict to the orthogonal complement of the lineality
  // space, where the constraint matrix has full column rank.
  RatMat basis;  // columns of the complement, as a dim x d matrix
  if (lin_dim == 0) {
    basis = rat_identity(dim);
  } else {
    RatMat lin_rows = res.lineality;
    const std::vector<RatVec> comp = rat_kernel_basis(lin_rows);
    assert(static_cast<int>(comp.size()) == d);
    basis.assign(dim, RatVec(d, Rational(0)));
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < dim; ++i) basis[i][j] = comp[j][i];
  }
  const RatMat reduced = rat_mul(nonzero_rows, basis);
  const std::vector<RatVec> rays_z = pointed_dd(reduced, d);
  for (const RatVec& z : rays_z) res.rays.push_back(primitive_integer(rat_mul_vec(basis, z)));
  return res;
}

std::vector<NumClass> to_classes(const LatticePtr& lattice, std::vector<RatVec> vecs,
                                 bool sorted) {
  if (sorted)
    std::sort(vecs.begin(), vecs.end(),
              [](const RatVec& a, const RatVec& b) { return rat_lex_less(a, b); });
  std::vector<NumClass> out;
  out.reserve(vecs.size());
  for (RatVec& v : vecs) out.emplace_back(lattice, std::move(v));
  return out;
}

}  // namespace

RationalCone RationalCone::make(LatticePtr lattice, std::vector<NumClass> gens,
                                std::vector<NumClass> facets) {
  RationalCone c;
  c.lattice_ = std::move(lattice);
  c.generators_ = std::move(gens);
  c.facets_ = std::move(facets);
  RatMat gen_rows;
  for (const NumClass& g : c.generators_) gen_rows.push_back(g.coords());
  c.dim_ = gen_rows.empty() ? 0 : rat_rank(gen_rows);
  // Cross-description consistency: every generator must satisfy every facet.
  for (const NumClass& g : c.generators_)
    for (const NumClass& f : c.facets_)
      if (pairing(g, f) < 0)
        throw InvariantError("cone descriptions inconsistent: generator violates facet");
  return c;
}

RationalCone RationalCone::from_generators(std::vector<NumClass> generators) {
  if (generators.empty()) throw PreconditionError("empty generator list");
  const LatticePtr lattice = generators[0].lattice();
  for (const NumClass& g : generators)
    if (!same_lattice(g.lattice(), lattice)) throw PreconditionError("incompatible lattices");
  const int dim = lattice->rank();

  std::vector<RatVec> gen_vecs;
  for (const NumClass& g : generators)
    if (!g.is_zero()) gen_vecs.push_back(g.coords());
  dedupe_primitive(gen_vecs);

  // Facets are the dual description under the pairing: constraint rows are
  // G . g so that row . f = pairing(g, f).
  RatMat rows;
  for (const RatVec& g : gen_vecs) {
    RatVec row(dim, Rational(0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) row[i] += lattice->gram()[i][j] * g[j];
    rows.push_back(std::move(row));
  }
  DDResult dd = dual_description(rows, dim);
  std::vector<RatVec> facet_vecs = dd.rays;
  for (const RatVec& l : dd.lineality) {
    facet_vecs.push_back(l);
    RatVec neg(l);
    for (Rational& q : neg) q = -q;
    facet_vecs.push_back(std::move(neg));
  }
  dedupe_primitive(facet_vecs);

  return make(lattice, to_classes(lattice, std::move(gen_vecs), /*sorted=*/false),
              to_classes(lattice, std::move(facet_vecs), /*sorted=*/true));
}

RationalCone RationalCone::dual() const {
  return make(lattice_, facets_, generators_);
}

bool RationalCone::full_dimensional() const { return lattice_ && dim_ == lattice_->rank(); }

bool RationalCone::contains(const NumClass& x, Mode mode) const {
  if (!same_lattice(x.lattice(), lattice_)) throw PreconditionError("incompatible lattices");
  if (mode == Mode::Interior && !full_dimensional())
    throw PreconditionError("cone not full-dimensional");
  for (const NumClass& f : facets_) {
    const Rational v = pairing(x, f);
    if (mode == Mode::Closed ? v < 0 : v <= 0) return false;
  }
  return true;
}

NumClass segment(const NumClass& a, const NumClass& b, const Rational& t) {
  if (t < 0 || t > 1) throw PreconditionError("segment parameter outside [0, 1]");
  return (Rational(1) - t) * a + t * b;
}

}  // namespace movstab
