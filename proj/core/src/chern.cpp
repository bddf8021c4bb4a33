#include "movstab/chern.hpp"

#include "movstab/errors.hpp"

namespace movstab {

SheafClass::SheafClass(int rank_in, NumClass c1_in, Rational c2_in)
    : rank(rank_in), c1(std::move(c1_in)), c2(std::move(c2_in)) {
  if (rank < 1) throw PreconditionError("sheaf class rank must be at least 1");
}

Rational SheafClass::ch2() const { return pairing(c1, c1) / 2 - c2; }

SheafClass tensor_class(const SheafClass& e, const SheafClass& f) {
  if (!same_lattice(e.c1.lattice(), f.c1.lattice()))
    throw PreconditionError("incompatible lattices");
  const int r = e.rank * f.rank;
  const NumClass c1 = Rational(f.rank) * e.c1 + Rational(e.rank) * f.c1;
  const Rational ch2 =
      Rational(f.rank) * e.ch2() + Rational(e.rank) * f.ch2() + pairing(e.c1, f.c1);
  const Rational c2 = pairing(c1, c1) / 2 - ch2;
  return SheafClass(r, c1, c2);
}

SheafClass dual_class(const SheafClass& e) { return SheafClass(e.rank, -e.c1, e.c2); }

SheafClass whitney_extension(const SheafClass& sub, const SheafClass& quot) {
  if (!same_lattice(sub.c1.lattice(), quot.c1.lattice()))
    throw PreconditionError("incompatible lattices");
  return SheafClass(sub.rank + quot.rank, sub.c1 + quot.c1,
                    sub.c2 + quot.c2 + pairing(sub.c1, quot.c1));
}

Rational bg_discriminant(const SheafClass& e) {
  return Rational(2 * e.rank) * e.c2 - Rational(e.rank - 1) * pairing(e.c1, e.c1);
}

SplitBundle::SplitBundle(std::vector<NumClass> summands_in) : summands(std::move(summands_in)) {
  if (summands.empty()) throw PreconditionError("split bundle needs at least one summand");
  for (const NumClass& l : summands)
    if (!same_lattice(l.lattice(), summands[0].lattice()))
      throw PreconditionError("incompatible lattices");
}

SheafClass SplitBundle::induced() const {
  NumClass c1 = summands[0];
  for (size_t i = 1; i < summands.size(); ++i) c1 = c1 + summands[i];
  Rational c2(0);
  for (size_t i = 0; i < summands.size(); ++i)
    for (size_t j = i + 1; j < summands.size(); ++j) c2 += pairing(summands[i], summands[j]);
  return SheafClass(static_cast<int>(summands.size()), c1, c2);
}

SplitBundle sym_split(const SplitBundle& b, int m) {
  if (m < 0) throw PreconditionError("symmetric power exponent must be nonnegative");
  const size_t s = b.summands.size();
  std::vector<NumClass> out;
  // Enumerate monomial exponent multisets a with sum a_i = m.
  std::vector<int> expo(s, 0);
  auto emit = [&]() {
    NumClass sum = Rational(expo[0]) * b.summands[0];
    for (size_t i = 1; i < s; ++i) sum = sum + Rational(expo[i]) * b.summands[i];
    out.push_back(std::move(sum));
  };
  // Recursive distribution of m among s slots, lexicographic order.
  auto rec = [&](auto&& self, size_t slot, int remaining) -> void {
    if (slot + 1 == s) {
      expo[slot] = remaining;
      emit();
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      expo[slot] = k;
      self(self, slot + 1, remaining - k);
    }
  };
  rec(rec, 0, m);
  return SplitBundle(std::move(out));
}

}  // namespace movstab
