#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "movstab/matrix.hpp"
#include "movstab/rational.hpp"
#include "movstab/smith.hpp"

using namespace movstab;

namespace {

// Independent integer determinant by cofactor expansion (test sizes are <= 5).
Integer int_det(const IntMat& a) {
  const int n = static_cast<int>(a.size());
  if (n == 1) return a[0][0];
  Integer det = 0;
  Integer sign = 1;
  for (int j = 0; j < n; ++j) {
    IntMat minor;
    for (int r = 1; r < n; ++r) {
      IntVec row;
      for (int c = 0; c < n; ++c)
        if (c != j) row.push_back(a[r][c]);
      minor.push_back(row);
    }
    det += sign * a[0][j] * int_det(minor);
    sign = -sign;
  }
  return det;
}

IntMat random_int_matrix(TestRng& rng, int rows, int cols, long long bound) {
  IntMat a(rows, IntVec(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = Integer(rng.ll(-bound, bound));
  return a;
}

RatMat to_rat(const IntMat& a) {
  RatMat out;
  for (const auto& row : a) {
    RatVec r;
    for (const auto& x : row) r.push_back(Rational(x));
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("rational parse and format round known values") {
  CHECK(parse_rational("3") == Q(3));
  CHECK(parse_rational("-7/2") == Q(-7, 2));
  CHECK(parse_rational("+4/6") == Q(2, 3));
  CHECK(parse_rational("4/-6") == Q(-2, 3));
  CHECK(parse_rational("0/5") == Q(0));
  CHECK(parse_rational("-0") == Q(0));

  CHECK(format_rational(Q(3)) == "3");
  CHECK(format_rational(Q(-7, 2)) == "-7/2");
  CHECK(format_rational(parse_rational("2/4")) == "1/2");
  CHECK(format_rational(parse_rational("3/-2")) == "-3/2");
  CHECK(format_rational(Q(0)) == "0");
  CHECK(format_rational(Q(5, 1)) == "5");
}

TEST_CASE("rational parser rejects malformed text and zero denominators") {
  for (const char* bad : {"", "a", "1/", "/2", "1.5", "1 /2", "1//2", "++1", "2e3", " 1"}) {
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
  CHECK_THROWS_WITH_AS(parse_rational("1/0"), "zero denominator in rational '1/0'",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_rational("0/0"), "zero denominator in rational '0/0'",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_rational("x/2"), "malformed rational 'x/2'", std::invalid_argument);
}

TEST_CASE("rational round trip on random values") {
  TestRng rng(101);
  for (int i = 0; i < 200; ++i) {
    Rational q(Integer(rng.ll(-1000, 1000)), Integer(rng.ll(1, 60)));
    CHECK(parse_rational(format_rational(q)) == q);
  }
}

TEST_CASE("matrix rank on known matrices") {
  CHECK(rat_rank(rat_identity(3)) == 3);
  CHECK(rat_rank({{Q(0), Q(0)}, {Q(0), Q(0)}}) == 0);
  // Rank-one outer product.
  CHECK(rat_rank({{Q(2), Q(4)}, {Q(3), Q(6)}}) == 1);
  CHECK(rat_rank({{Q(1), Q(2), Q(3)}, {Q(4), Q(5), Q(6)}}) == 2);
}

TEST_CASE("kernel basis spans the right kernel") {
  TestRng rng(102);
  for (int trial = 0; trial < 50; ++trial) {
    int rows = static_cast<int>(rng.ll(1, 4));
    int cols = static_cast<int>(rng.ll(1, 5));
    IntMat ai = random_int_matrix(rng, rows, cols, 4);
    RatMat a = to_rat(ai);
    auto kernel = rat_kernel_basis(a);
    CHECK(static_cast<int>(kernel.size()) == cols - rat_rank(a));
    for (const auto& k : kernel) {
      RatVec image = rat_mul_vec(a, k);
      for (const auto& entry : image) CHECK(entry == 0);
    }
    // Kernel vectors are independent: the matrix with them as rows has full rank.
    if (!kernel.empty()) {
      RatMat km;
      for (const auto& k : kernel) km.push_back(k);
      CHECK(rat_rank(km) == static_cast<int>(kernel.size()));
    }
  }
}

TEST_CASE("square solve recovers exact solutions and flags singular systems") {
  TestRng rng(103);
  int solved = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int n = static_cast<int>(rng.ll(1, 4));
    IntMat ai = random_int_matrix(rng, n, n, 5);
    RatMat a = to_rat(ai);
    RatVec x;
    for (int i = 0; i < n; ++i) x.push_back(rng.rat(-5, 5));
    RatVec b = rat_mul_vec(a, x);
    auto sol = rat_solve(a, b);
    if (rat_rank(a) == n) {
      REQUIRE(sol.has_value());
      CHECK(*sol == x);
      ++solved;
    } else if (sol.has_value()) {
      // A singular-but-consistent system may still return some solution.
      CHECK(rat_mul_vec(a, *sol) == b);
    }
  }
  CHECK(solved > 20);  // sanity: the generator hits plenty of invertible cases

  // A visibly singular system with no solution.
  RatMat sing = {{Q(1), Q(2)}, {Q(2), Q(4)}};
  CHECK_FALSE(rat_solve(sing, {Q(1), Q(0)}).has_value());
}

TEST_CASE("matrix inverse multiplies to the identity") {
  TestRng rng(104);
  for (int trial = 0; trial < 40; ++trial) {
    int n = static_cast<int>(rng.ll(1, 4));
    IntMat ai = random_int_matrix(rng, n, n, 5);
    RatMat a = to_rat(ai);
    auto inv = rat_inverse(a);
    if (rat_rank(a) == n) {
      REQUIRE(inv.has_value());
      CHECK(rat_mul(a, *inv) == rat_identity(n));
      CHECK(rat_mul(*inv, a) == rat_identity(n));
    } else {
      CHECK_FALSE(inv.has_value());
    }
  }
}

TEST_CASE("lexicographic comparison and integrality checks") {
  CHECK(rat_lex_less(qvec({1, 2}), qvec({1, 3})));
  CHECK(rat_lex_less(qvec({0, 9}), qvec({1, 0})));
  CHECK_FALSE(rat_lex_less(qvec({1, 2}), qvec({1, 2})));
  CHECK(rat_is_integer(Q(4)));
  CHECK_FALSE(rat_is_integer(Q(1, 2)));
  CHECK(rat_vec_is_integer(qvec({3, -5, 0})));
  CHECK_FALSE(rat_vec_is_integer({Q(1), Q(1, 3)}));
}

TEST_CASE("primitive integer vector scales to coprime integers preserving direction") {
  CHECK(primitive_integer({Q(1, 2), Q(3, 4)}) == qvec({2, 3}));
  CHECK(primitive_integer(qvec({-2, -4})) == qvec({-1, -2}));
  CHECK(primitive_integer(qvec({0, 0})) == qvec({0, 0}));

  TestRng rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    RatVec v;
    for (int i = 0; i < 3; ++i) v.push_back(rng.rat(-6, 6));
    RatVec p = primitive_integer(v);
    CHECK(rat_vec_is_integer(p));
    // Direction preserved: p = lambda v with lambda > 0.
    int pivot = -1;
    for (int i = 0; i < 3; ++i)
      if (v[i] != 0) pivot = i;
    if (pivot < 0) {
      CHECK(p == v);
      continue;
    }
    Rational lambda = p[pivot] / v[pivot];
    CHECK(lambda > 0);
    for (int i = 0; i < 3; ++i) CHECK(p[i] == lambda * v[i]);
  }
}

TEST_CASE("smith normal form on known matrices") {
  {
    auto s = smith_normal_form({{Integer(2), Integer(0)}, {Integer(0), Integer(3)}});
    CHECK(s.d[0][0] == 1);
    CHECK(s.d[1][1] == 6);
  }
  {
    auto s = smith_normal_form({{Integer(4), Integer(6)}, {Integer(6), Integer(9)}});
    CHECK(s.d[0][0] == 1);
    CHECK(s.d[1][1] == 0);
  }
  auto divs = elementary_divisors({{Integer(6), Integer(0)}, {Integer(0), Integer(4)}});
  REQUIRE(divs.size() == 2);
  CHECK(divs[0] == 2);
  CHECK(divs[1] == 12);
}

TEST_CASE("smith normal form transform identity, divisibility, unimodularity") {
  TestRng rng(106);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = static_cast<int>(rng.ll(1, 4));
    int cols = static_cast<int>(rng.ll(1, 4));
    IntMat a = random_int_matrix(rng, rows, cols, 9);
    auto s = smith_normal_form(a);

    IntMat lhs = int_mul(int_mul(s.left, a), s.right);
    REQUIRE(lhs.size() == s.d.size());
    for (size_t i = 0; i < lhs.size(); ++i)
      for (size_t j = 0; j < lhs[i].size(); ++j) {
        CHECK(lhs[i][j] == s.d[i][j]);
        if (i != j) CHECK(s.d[i][j] == 0);
      }

    Integer dl = int_det(s.left);
    Integer dr = int_det(s.right);
    CHECK((dl == 1 || dl == -1));
    CHECK((dr == 1 || dr == -1));

    int nonzero = 0;
    int diag_len = static_cast<int>(std::min(rows, cols));
    for (int i = 0; i < diag_len; ++i) {
      CHECK(s.d[i][i] >= 0);
      if (s.d[i][i] != 0) ++nonzero;
      if (i + 1 < diag_len && s.d[i][i] != 0 && s.d[i + 1][i + 1] != 0)
        CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
      // Zeros only after all nonzero entries.
      if (i > 0 && s.d[i - 1][i - 1] == 0) CHECK(s.d[i][i] == 0);
    }
    CHECK(nonzero == rat_rank(to_rat(a)));

    auto divs = elementary_divisors(a);
    REQUIRE(static_cast<int>(divs.size()) == nonzero);
    for (int i = 0; i < nonzero; ++i) CHECK(divs[i] == s.d[i][i]);
  }
}
