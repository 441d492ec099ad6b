#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "graphsum/lattice.hpp"
#include "graphsum/rng.hpp"

using namespace graphsum;
using namespace graphsum::lattice;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  Matrix m;
  for (const auto& r : rows) {
    std::vector<Int> row;
    for (long long x : r) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  return m;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<Int>(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix random_matrix(Rng& rng, size_t r, size_t c, long long lim) {
  Matrix m(r, std::vector<Int>(c));
  for (auto& row : m)
    for (auto& x : row) x = rng.range(-lim, lim);
  return m;
}

// random unimodular matrix from elementary row operations
Matrix random_unimodular(Rng& rng, size_t k) {
  Matrix u(k, std::vector<Int>(k, 0));
  for (size_t i = 0; i < k; ++i) u[i][i] = 1;
  for (int step = 0; step < 12; ++step) {
    size_t i = rng.below(k), j = rng.below(k);
    if (i == j) continue;
    Int c = rng.range(-3, 3);
    for (size_t t = 0; t < k; ++t) u[i][t] += c * u[j][t];
  }
  if (rng.chance(0.5) && k >= 2) std::swap(u[0], u[1]);
  return u;
}

std::vector<IntVector> rows_of(const Matrix& m) {
  std::vector<IntVector> out;
  for (const auto& r : m) out.emplace_back(r);
  return out;
}

}  // namespace

TEST_CASE("hnf fixed points and gcd collapse") {
  CHECK(hnf(mat({{2, 4}, {0, 6}})) == mat({{2, 4}, {0, 6}}));
  CHECK(hnf(mat({{1, 0}, {0, 1}})) == mat({{1, 0}, {0, 1}}));
  CHECK(hnf(mat({{2, 0}, {3, 0}})) == mat({{1, 0}}));
}

TEST_CASE("hnf normalizes pivots and reduces above") {
  // pivots positive, entries above a pivot in [0, pivot)
  Matrix h = hnf(mat({{-2, 1, 7}, {0, 3, -5}, {0, 0, 4}}));
  REQUIRE(h.size() == 3);
  for (size_t i = 0; i < h.size(); ++i) {
    size_t p = 0;
    while (p < h[i].size() && h[i][p] == 0) ++p;
    REQUIRE(p < h[i].size());
    CHECK(h[i][p] > 0);
    for (size_t r = 0; r < i; ++r) {
      CHECK(h[r][p] >= 0);
      CHECK(h[r][p] < h[i][p]);
    }
  }
}

TEST_CASE("hnf is invariant under unimodular row transforms") {
  Rng rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    size_t k = 1 + rng.below(4);
    size_t r = 1 + rng.below(k);
    Matrix m = random_matrix(rng, r, k, 8);
    Matrix u = random_unimodular(rng, r);
    CHECK(hnf(m) == hnf(mul(u, m)));
  }
}

TEST_CASE("snf fixed examples") {
  CHECK(snf(mat({{2, 0}, {0, 3}})).d == mat({{1, 0}, {0, 6}}));
  CHECK(snf(mat({{1, 0}, {0, 1}})).d == mat({{1, 0}, {0, 1}}));
  CHECK(snf(mat({{2, 4}, {0, 6}})).d == mat({{2, 0}, {0, 6}}));
}

TEST_CASE("snf identity, unimodularity, divisibility on random matrices") {
  Rng rng(77001);
  for (int trial = 0; trial < 120; ++trial) {
    size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
    Matrix m = random_matrix(rng, r, c, 9);
    SnfResult s = snf(m);
    CHECK(mul(mul(s.u, m), s.v) == s.d);
    CHECK(abs_int(det(s.u)) == 1);
    CHECK(abs_int(det(s.v)) == 1);
    Int prev = -1;
    bool seen_zero = false;
    for (size_t i = 0; i < std::min(r, c); ++i) {
      const Int& x = s.d[i][i];
      CHECK(x >= 0);
      if (x == 0) seen_zero = true;
      if (seen_zero) CHECK(x == 0);
      if (prev > 0 && x != 0) CHECK(x % prev == 0);
      if (x != 0) prev = x;
      for (size_t j = 0; j < c; ++j)
        if (j != i) CHECK(s.d[i][j] == 0);
    }
  }
}

TEST_CASE("span membership fixed examples") {
  LatticeBasis l(2, rows_of(mat({{2, 0}, {0, 3}})));
  CHECK(span_membership(l, IntVector::of({2, 3})));
  CHECK_FALSE(span_membership(l, IntVector::of({1, 1})));
  CHECK(span_membership(l, IntVector::of({0, 0})));
}

TEST_CASE("membership matches exhaustive coefficient search") {
  // Instances are screened so the coefficient box [-20,20]^rank provably
  // contains every solution for vectors in the L1 ball of radius 6:
  // coefficients are x = v B^T adj(G) / det(G), G the Gram matrix, so
  // |x_i| <= max_j |(v B^T)_j| * sum_j |adj(G)_{ji}| / det(G) with
  // |(v B^T)_j| <= 6 * (max row L1 of B). Instances failing the screen are
  // resampled, never silently skipped.
  Rng rng(5150);
  auto minor_det = [&](const Matrix& g, size_t skip_r, size_t skip_c) {
    std::vector<std::vector<Int>> sub;
    for (size_t i = 0; i < g.size(); ++i) {
      if (i == skip_r) continue;
      std::vector<Int> row;
      for (size_t j = 0; j < g.size(); ++j)
        if (j != skip_c) row.push_back(g[i][j]);
      sub.push_back(std::move(row));
    }
    if (sub.empty()) return Int(1);
    return det(sub);
  };
  int done = 0;
  while (done < 12) {
    size_t k = 2 + rng.below(2);           // ambient 2 or 3
    size_t r = 1 + rng.below(k);           // rank
    Matrix b = random_matrix(rng, r, k, 3);
    if (rank_of(b) != r) continue;
    // Gram, adjugate bound screen
    Matrix g(r, std::vector<Int>(r, 0));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j)
        for (size_t t = 0; t < k; ++t) g[i][j] += b[i][t] * b[j][t];
    Int detg = det(g);
    REQUIRE(detg > 0);
    Int max_row_l1 = 0;
    for (const auto& row : b) {
      Int s = 0;
      for (const auto& x : row) s += abs_int(x);
      max_row_l1 = std::max(max_row_l1, s);
    }
    Int worst = 0;
    for (size_t i = 0; i < r; ++i) {
      Int col = 0;
      for (size_t j = 0; j < r; ++j) col += abs_int(minor_det(g, i, j));
      worst = std::max(worst, Int(6) * max_row_l1 * col);
    }
    if (worst > 20 * detg) continue;  // box would not be conclusive

    LatticeBasis basis(k, rows_of(b));
    // every vector reachable with coefficients in the box
    std::set<std::vector<Int>> reachable;
    std::vector<long long> coef(r, -20);
    for (;;) {
      std::vector<Int> v(k, 0);
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < k; ++j) v[j] += Int(coef[i]) * b[i][j];
      reachable.insert(std::move(v));
      size_t pos = 0;
      while (pos < r && coef[pos] == 20) coef[pos++] = -20;
      if (pos == r) break;
      ++coef[pos];
    }
    for (const IntVector& v : enumerate_l1_ball(k, 6)) {
      const bool brute = reachable.count(v.entries()) > 0;
      CHECK(span_membership(basis, v) == brute);
    }
    ++done;
  }
}

TEST_CASE("volume squared fixed examples") {
  CHECK(volume_squared(LatticeBasis(2, rows_of(mat({{2, 0}, {0, 3}})))) == 36);
  CHECK(volume_squared(LatticeBasis(3, rows_of(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})))) == 1);
  CHECK(volume_squared(LatticeBasis(2, rows_of(mat({{3, 0}})))) == 9);
}

TEST_CASE("dependent rows are rejected") {
  CHECK_THROWS_AS(LatticeBasis(2, rows_of(mat({{2, 4}, {1, 2}}))), std::invalid_argument);
}

TEST_CASE("lattice index fixed examples") {
  LatticeBasis z2(2, rows_of(mat({{1, 0}, {0, 1}})));
  LatticeBasis sub(2, rows_of(mat({{2, 0}, {0, 3}})));
  CHECK(lattice_index(z2, sub) == 6);
  CHECK(lattice_index(sub, sub) == 1);
  CHECK(lattice_index(LatticeBasis(2, rows_of(mat({{1, 0}}))),
                      LatticeBasis(2, rows_of(mat({{4, 0}})))) == 4);
}

TEST_CASE("index of a scaled sublattice is the determinant of the scaling") {
  Rng rng(90210);
  for (int trial = 0; trial < 100; ++trial) {
    size_t k = 1 + rng.below(3);
    Matrix base;
    do {
      base = random_matrix(rng, k, k, 4);
    } while (rank_of(base) != k);
    // T lower triangular with positive diagonal, at least one entry >= 2
    Matrix t(k, std::vector<Int>(k, 0));
    Int expected = 1;
    for (size_t i = 0; i < k; ++i) {
      t[i][i] = 1 + rng.below(3);
      expected *= t[i][i];
      for (size_t j = 0; j < i; ++j) t[i][j] = rng.range(-2, 2);
    }
    if (expected == 1) {
      t[0][0] = 2;
      expected = 2;
    }
    LatticeBasis big(k, rows_of(base));
    LatticeBasis small(k, rows_of(mul(t, base)));
    Int idx = lattice_index(big, small);
    CHECK(idx == expected);
    CHECK(idx >= 2);  // proper inclusion
  }
}

TEST_CASE("index preconditions") {
  LatticeBasis l(2, rows_of(mat({{2, 0}})));
  LatticeBasis not_sub(2, rows_of(mat({{3, 0}})));
  CHECK_THROWS_AS(lattice_index(l, not_sub), std::invalid_argument);
  LatticeBasis rank2(2, rows_of(mat({{2, 0}, {0, 2}})));
  CHECK_THROWS_AS(lattice_index(l, rank2), std::invalid_argument);
}

TEST_CASE("reduce_generating_set fixed examples") {
  auto s1 = reduce_generating_set({IntVector::of({2, 0}), IntVector::of({3, 0})}, 2);
  REQUIRE(s1.size() == 2);
  CHECK(s1[0] == IntVector::of({2, 0}));
  CHECK(s1[1] == IntVector::of({3, 0}));

  auto s2 = reduce_generating_set(
      {IntVector::of({1, 0}), IntVector::of({0, 1}), IntVector::of({1, 1})}, 2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == IntVector::of({1, 0}));
  CHECK(s2[1] == IntVector::of({0, 1}));

  auto s3 = reduce_generating_set({IntVector::of({5, -1})}, 2);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0] == IntVector::of({5, -1}));
}

TEST_CASE("reduce_generating_set norm precondition") {
  CHECK_THROWS_AS(reduce_generating_set({IntVector::of({7, 0})}, 2), std::invalid_argument);
}

TEST_CASE("reduce_generating_set bound, span preservation, covolume halving") {
  Rng rng(314159);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t k = 1 + rng.below(5);
    const long long big_d = 2 + static_cast<long long>(rng.below(7));  // D in [2,8]
    const size_t count = 1 + rng.below(10);
    std::vector<IntVector> f;
    for (size_t i = 0; i < count; ++i) {
      std::vector<Int> v(k);
      for (;;) {
        Int l1 = 0;
        for (auto& x : v) {
          x = rng.range(-big_d, big_d);
          l1 += abs_int(x);
        }
        if (l1 <= 3 * big_d) break;
      }
      f.emplace_back(v);
    }
    auto s = reduce_generating_set(f, big_d);
    // size bound
    double bound = static_cast<double>(k) * (2.0 + std::log2(static_cast<double>(big_d)));
    CHECK(static_cast<double>(s.size()) <= bound);
    // norms preserved from the input family
    for (const auto& v : s) CHECK(v.l1() <= 3 * big_d);
    // span equality via HNF comparison
    Matrix mf, ms;
    for (const auto& v : f) mf.push_back(v.entries());
    for (const auto& v : s) ms.push_back(v.entries());
    CHECK(hnf(mf) == hnf(ms));
    // replay: every vector that does not raise the rank at least halves
    // the covolume (squared volume shrinks by a factor of four or more)
    for (size_t i = 1; i < s.size(); ++i) {
      Matrix pre(ms.begin(), ms.begin() + static_cast<long>(i));
      Matrix post(ms.begin(), ms.begin() + static_cast<long>(i) + 1);
      if (rank_of(post) > rank_of(pre)) continue;
      LatticeBasis before = LatticeBasis::from_generators(k, rows_of(pre));
      LatticeBasis after = LatticeBasis::from_generators(k, rows_of(post));
      CHECK(volume_squared(after) * 4 <= volume_squared(before));
    }
  }
}

TEST_CASE("l1 ball enumeration") {
  CHECK(enumerate_l1_ball(2, 1).size() == 5);
  CHECK(enumerate_l1_ball(1, 2).size() == 5);
  auto zero = enumerate_l1_ball(3, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].is_zero());

  for (size_t k = 1; k <= 3; ++k)
    for (long long b = 0; b <= 4; ++b) {
      auto ball = enumerate_l1_ball(k, b);
      CHECK(Int(ball.size()) == l1_ball_size(k, b));
      std::set<IntVector> distinct(ball.begin(), ball.end());
      CHECK(distinct.size() == ball.size());
      for (const auto& v : ball) CHECK(v.l1() <= b);
    }
}

TEST_CASE("IntVector caches the l1 norm") {
  IntVector v = IntVector::of({3, -4, 0, 1});
  CHECK(v.l1() == 8);
  CHECK(v.size() == 4);
  CHECK_FALSE(v.is_zero());
}
