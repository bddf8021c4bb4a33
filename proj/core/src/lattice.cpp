#include "movstab/lattice.hpp"

#include <cassert>

#include "movstab/errors.hpp"
#include "movstab/smith.hpp"

namespace movstab {

Signature certify_signature(const RatMat& gram) {
  if (!rat_is_symmetric(gram)) throw PreconditionError("gram matrix not symmetric");
  RatMat m = gram;
  const int n = static_cast<int>(m.size());
  // Symmetric congruence elimination: apply each row operation and the same
  // column operation, which preserves inertia (Sylvester's law).
  for (int k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      int j = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][i] != 0) {
          j = i;
          break;
        }
      if (j >= 0) {
        std::swap(m[k], m[j]);
        for (int r = 0; r < n; ++r) std::swap(m[r][k], m[r][j]);
      } else {
        for (int i = k + 1; i < n; ++i)
          if (m[k][i] != 0) {
            j = i;
            break;
          }
        if (j < 0) continue;  // row/column k is zero on the trailing block
        // m[j][j] = 0 here, so adding row/col j to row/col k makes the
        // pivot 2*m[k][j] != 0.
        for (int c = 0; c < n; ++c) m[k][c] += m[j][c];
        for (int r = 0; r < n; ++r) m[r][k] += m[r][j];
      }
    }
    if (m[k][k] == 0) continue;
    const Rational p = m[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational f = m[i][k] / p;
      for (int c = k; c < n; ++c) m[i][c] -= f * m[k][c];
      for (int r = k; r < n; ++r) m[r][i] -= f * m[r][k];
    }
  }
  Signature sig;
  for (int k = 0; k < n; ++k) {
    const int s = sign_of(m[k][k]);
    if (s > 0)
      ++sig.n_pos;
    else if (s < 0)
      ++sig.n_neg;
    else
      ++sig.n_zero;
  }
  return sig;
}

LatticePtr NSLattice::create(RatMat gram, std::vector<std::string> basis_labels) {
  const int n = static_cast<int>(gram.size());
  if (n == 0) throw PreconditionError("lattice rank must be positive");
  for (const RatVec& row : gram)
    if (static_cast<int>(row.size()) != n) throw PreconditionError("gram matrix not square");
  if (!rat_is_symmetric(gram)) throw PreconditionError("gram matrix not symmetric");
  const Signature sig = certify_signature(gram);
  if (sig.n_zero > 0) throw PreconditionError("gram matrix degenerate");
  if (sig.n_pos != 1 || sig.n_neg != n - 1)
    throw PreconditionError("gram matrix signature is not (1, rank-1)");
  if (basis_labels.empty()) {
    for (int i = 0; i < n; ++i) basis_labels.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(basis_labels.size()) != n)
    throw PreconditionError("basis label count does not match rank");
  return LatticePtr(new NSLattice(std::move(gram), std::move(basis_labels), n));
}

Rational NSLattice::pair(const RatVec& a, const RatVec& b) const {
  assert(static_cast<int>(a.size()) == rank_ && static_cast<int>(b.size()) == rank_);
  Rational acc(0);
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j) acc += a[i] * gram_[i][j] * b[j];
  }
  return acc;
}

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->rank() == b->rank() && a->gram() == b->gram();
}

NumClass::NumClass(LatticePtr lattice, RatVec coords)
    : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  if (!lattice_) throw PreconditionError("class requires a lattice");
  if (static_cast<int>(coords_.size()) != lattice_->rank())
    throw PreconditionError("coordinate count does not match lattice rank");
}

bool NumClass::is_zero() const {
  for (const Rational& c : coords_)
    if (c != 0) return false;
  return true;
}

namespace {
void require_same_lattice(const NumClass& a, const NumClass& b) {
  if (!same_lattice(a.lattice(), b.lattice())) throw PreconditionError("incompatible lattices");
}
}  // namespace

NumClass NumClass::operator+(const NumClass& o) const {
  require_same_lattice(*this, o);
  RatVec c(coords_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return NumClass(lattice_, std::move(c));
}

NumClass NumClass::operator-(const NumClass& o) const {
  require_same_lattice(*this, o);
  RatVec c(coords_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return NumClass(lattice_, std::move(c));
}

NumClass NumClass::operator-() const {
  RatVec c(coords_);
  for (Rational& q : c) q = -q;
  return NumClass(lattice_, std::move(c));
}

NumClass operator*(const Rational& s, const NumClass& x) {
  RatVec c(x.coords_);
  for (Rational& q : c) q *= s;
  return NumClass(x.lattice_, std::move(c));
}

bool NumClass::operator==(const NumClass& o) const {
  return same_lattice(lattice_, o.lattice_) && coords_ == o.coords_;
}

Rational pairing(const NumClass& a, const NumClass& b) {
  require_same_lattice(a, b);
  return a.lattice()->pair(a.coords(), b.coords());
}

HodgeBound hodge_bound(const NumClass& d, const NumClass& a) {
  require_same_lattice(d, a);
  if (pairing(a, a) <= 0) throw PreconditionError("hodge bound requires a.a > 0");
  if (pairing(d, a) != 0) throw PreconditionError("hodge bound requires d.a = 0");
  HodgeBound out{pairing(d, d), d.is_zero()};
  // On a certified (1, rank-1) lattice the orthogonal complement of a is
  // negative definite, so these cannot fire; check anyway.
  if (out.self_pairing > 0) throw InvariantError("hodge bound violated: d.d > 0 on a-perp");
  if (out.self_pairing == 0 && !out.equality)
    throw InvariantError("hodge bound violated: null class in a-perp is nonzero");
  return out;
}

LatticeMorphism LatticeMorphism::create(LatticePtr source, LatticePtr target, RatMat push,
                                        RatMat pull) {
  if (!source || !target) throw PreconditionError("morphism requires source and target lattices");
  const int sr = source->rank();
  const int tr = target->rank();
  auto check_shape = [](const RatMat& m, int rows, int cols, const char* name) {
    if (static_cast<int>(m.size()) != rows)
      throw PreconditionError(std::string(name) + " has wrong row count");
    for (const RatVec& row : m)
      if (static_cast<int>(row.size()) != cols)
        throw PreconditionError(std::string(name) + " has wrong column count");
  };
  check_shape(push, tr, sr, "push matrix");
  check_shape(pull, sr, tr, "pull matrix");
  // Adjointness (projection formula): pull^T * G_source = G_target * push.
  const RatMat lhs = rat_mul(rat_transpose(pull), source->gram());
  const RatMat rhs = rat_mul(target->gram(), push);
  if (lhs != rhs) throw PreconditionError("push/pull matrices are not adjoint under the pairings");
  LatticeMorphism m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.push_ = std::move(push);
  m.pull_ = std::move(pull);
  return m;
}

NumClass transport(const LatticeMorphism& m, const NumClass& x, Transport dir) {
  if (dir == Transport::Push) {
    if (!same_lattice(x.lattice(), m.source()))
      throw PreconditionError("incompatible lattices");
    return NumClass(m.target(), rat_mul_vec(m.push(), x.coords()));
  }
  if (!same_lattice(x.lattice(), m.target())) throw PreconditionError("incompatible lattices");
  return NumClass(m.source(), rat_mul_vec(m.pull(), x.coords()));
}

namespace {

IntMat classes_to_int_columns(const std::vector<NumClass>& classes, const char* what) {
  if (classes.empty()) throw PreconditionError(std::string(what) + " span list is empty");
  const int rank = classes[0].lattice()->rank();
  for (const NumClass& c : classes) {
    if (!same_lattice(c.lattice(), classes[0].lattice()))
      throw PreconditionError("incompatible lattices");
    if (!rat_vec_is_integer(c.coords()))
      throw PreconditionError(std::string(what) + " span list has non-integer coordinates");
  }
  IntMat m(rank, IntVec(classes.size()));
  for (size_t j = 0; j < classes.size(); ++j)
    for (int i = 0; i < rank; ++i) m[i][j] = Integer(numerator(classes[j].coords()[i]));
  return m;
}

// Integer basis (columns) of the column span of an integer matrix, via the
// Smith decomposition: A = L^-1 D R^-1, so col-span(A) = col-span(L^-1 D).
IntMat column_lattice_basis(const IntMat& a, int rank_required, const char* what) {
  SmithResult s = smith_normal_form(a);
  const int n = static_cast<int>(a.size());
  std::vector<Integer> divs;
  for (int i = 0; i < std::min(n, static_cast<int>(a[0].size())); ++i)
    if (s.d[i][i] != 0) divs.push_back(s.d[i][i]);
  if (static_cast<int>(divs.size()) != rank_required)
    throw PreconditionError(std::string(what) + " span list is rank deficient");
  RatMat left_rat(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) left_rat[i][j] = Rational(s.left[i][j]);
  auto inv = rat_inverse(left_rat);
  if (!inv) throw InvariantError("unimodular matrix not invertible");
  IntMat basis(n, IntVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational v = (*inv)[i][j] * Rational(divs[j]);
      if (!rat_is_integer(v)) throw InvariantError("lattice basis not integral");
      basis[i][j] = Integer(numerator(v));
    }
  return basis;
}

}  // namespace

Integer cartier_index(const std::vector<NumClass>& ambient, const std::vector<NumClass>& sub) {
  const IntMat amb_cols = classes_to_int_columns(ambient, "ambient");
  const IntMat sub_cols = classes_to_int_columns(sub, "sub");
  if (!same_lattice(ambient[0].lattice(), sub[0].lattice()))
    throw PreconditionError("incompatible lattices");
  const int n = ambient[0].lattice()->rank();

  const IntMat amb_basis = column_lattice_basis(amb_cols, n, "ambient");
  RatMat amb_rat(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) amb_rat[i][j] = Rational(amb_basis[i][j]);
  const auto amb_inv = rat_inverse(amb_rat);
  if (!amb_inv) throw InvariantError("ambient basis not invertible");

  // Coordinates of the sub generators in the ambient basis; integrality is
  // exactly the containment <sub> within <ambient>.
  IntMat rel(n, IntVec(sub_cols[0].size()));
  for (size_t j = 0; j < sub_cols[0].size(); ++j) {
    RatVec col(n);
    for (int i = 0; i < n; ++i) col[i] = Rational(sub_cols[i][j]);
    const RatVec x = rat_mul_vec(*amb_inv, col);
    for (int i = 0; i < n; ++i) {
      if (!rat_is_integer(x[i]))
        throw PreconditionError("sub span is not contained in ambient span");
      rel[i][j] = Integer(numerator(x[i]));
    }
  }

  const std::vector<Integer> divs = elementary_divisors(rel);
  if (static_cast<int>(divs.size()) != n)
    throw PreconditionError("sub span list is rank deficient");
  return divs.back();  // exponent of the quotient group
}

}  // namespace movstab
