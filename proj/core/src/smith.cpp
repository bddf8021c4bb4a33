#include "movstab/smith.hpp"

#include <cassert>
#include <cstdlib>

namespace movstab {

IntMat int_identity(int n) {
  IntMat m(n, IntVec(n, Integer(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
  assert(!a.empty() && !b.empty() && a[0].size() == b.size());
  IntMat c(a.size(), IntVec(b[0].size(), Integer(0)));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

namespace {

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Truncated quotient, as in C's integer division.
Integer quot(const Integer& a, const Integer& b) { return a / b; }

}  // namespace

SmithResult smith_normal_form(IntMat a) {
  const int m = static_cast<int>(a.size());
  const int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  SmithResult res;
  res.left = int_identity(m);
  res.right = int_identity(n);

  auto swap_rows = [&](int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(res.left[i], res.left[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (size_t r = 0; r < res.right.size(); ++r) std::swap(res.right[r][i], res.right[r][j]);
  };
  auto add_row = [&](int dst, int src, const Integer& f) {  // row dst += f * row src
    for (int j = 0; j < n; ++j) a[dst][j] += f * a[src][j];
    for (int j = 0; j < m; ++j) res.left[dst][j] += f * res.left[src][j];
  };
  auto add_col = [&](int dst, int src, const Integer& f) {
    for (int i = 0; i < m; ++i) a[i][dst] += f * a[i][src];
    for (int i = 0; i < n; ++i) res.right[i][dst] += f * res.right[i][src];
  };
  auto negate_row = [&](int i) {
    for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
    for (int j = 0; j < m; ++j) res.left[i][j] = -res.left[i][j];
  };

  const int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    for (;;) {
      // Move a minimal-magnitude nonzero entry of the trailing block to (t,t).
      int pi = -1, pj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j) {
          if (a[i][j] == 0) continue;
          if (pi < 0 || abs_int(a[i][j]) < abs_int(a[pi][pj])) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        // Trailing block is zero; remaining diagonal entries stay 0.
        t = steps;
        break;
      }
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);

      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const Integer q = quot(a[i][t], a[t][t]);
        if (q != 0) add_row(i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        const Integer q = quot(a[t][j], a[t][t]);
        if (q != 0) add_col(j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;  // smaller remainders appeared; re-pick the pivot

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (int i = t + 1; i < m && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_row(t, i, Integer(1));
            divides = false;
          }
      if (divides) break;
    }
    if (t >= steps) break;
    if (a[t][t] < 0) negate_row(t);
  }

  res.d = std::move(a);
  return res;
}

std::vector<Integer> elementary_divisors(const IntMat& a) {
  SmithResult s = smith_normal_form(a);
  std::vector<Integer> divs;
  const size_t steps = std::min(s.d.size(), s.d.empty() ? size_t{0} : s.d[0].size());
  for (size_t i = 0; i < steps; ++i)
    if (s.d[i][i] != 0) divs.push_back(s.d[i][i]);
  return divs;
}

}  // namespace movstab
