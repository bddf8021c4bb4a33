#include "movstab/matrix.hpp"

#include <cassert>

#include "movstab/errors.hpp"

namespace movstab {

RatMat rat_identity(int n) {
  RatMat m(n, RatVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat rat_transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat t(a[0].size(), RatVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
  assert(!a.empty() && !b.empty() && a[0].size() == b.size());
  RatMat c(a.size(), RatVec(b[0].size(), Rational(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec rat_mul_vec(const RatMat& a, const RatVec& x) {
  assert(a.empty() || a[0].size() == x.size());
  RatVec y(a.size(), Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

bool rat_is_symmetric(const RatMat& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (size_t j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) return false;
  }
  return true;
}

namespace {

// Row echelon reduction in place; returns pivot columns.
std::vector<int> echelon(RatMat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    const Rational inv = Rational(1) / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rat_rank(RatMat a) { return static_cast<int>(echelon(a).size()); }

std::vector<RatVec> rat_kernel_basis(const RatMat& a) {
  if (a.empty()) return {};
  const int cols = static_cast<int>(a[0].size());
  RatMat m = a;
  std::vector<int> pivots = echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    RatVec v(cols, Rational(0));
    v[fc] = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -m[pr][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> rat_solve(RatMat a, RatVec b) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return RatVec{};
  assert(static_cast<int>(a[0].size()) == n && static_cast<int>(b.size()) == n);
  for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = echelon(a);
  if (static_cast<int>(pivots.size()) != n || pivots.back() == n) return std::nullopt;
  RatVec x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::optional<RatMat> rat_inverse(const RatMat& a) {
  const int n = static_cast<int>(a.size());
  RatMat m = a;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i].push_back(i == j ? Rational(1) : Rational(0));
  }
  std::vector<int> pivots = echelon(m);
  if (static_cast<int>(pivots.size()) != n || pivots.back() >= n) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

bool rat_lex_less(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

RatVec primitive_integer(const RatVec& v) {
  Integer lcm_den = 1;
  bool all_zero = true;
  for (const Rational& q : v) {
    if (q != 0) all_zero = false;
    lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(q)));
  }
  if (all_zero) return v;
  Integer g = 0;
  std::vector<Integer> scaled;
  scaled.reserve(v.size());
  for (const Rational& q : v) {
    Integer n = Integer(numerator(q)) * (lcm_den / Integer(denominator(q)));
    g = boost::multiprecision::gcd(g, n);
    scaled.push_back(std::move(n));
  }
  RatVec out;
  out.reserve(v.size());
  for (const Integer& n : scaled) out.emplace_back(Rational(n / g));
  return out;
}

bool rat_is_integer(const Rational& q) { return denominator(q) == 1; }

bool rat_vec_is_integer(const RatVec& v) {
  for (const Rational& q : v)
    if (!rat_is_integer(q)) return false;
  return true;
}

}  // namespace movstab
