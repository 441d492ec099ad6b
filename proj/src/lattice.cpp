#include "graphsum/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphsum::lattice {

namespace {

void check_rect(const Matrix& m) {
  for (const auto& row : m)
    if (row.size() != m[0].size())
      throw std::invalid_argument("matrix rows have unequal lengths");
}

Matrix identity(size_t n) {
  Matrix id(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

void row_axpy(std::vector<Int>& dst, const Int& q, const std::vector<Int>& src) {
  for (size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
}

Matrix mul(const Matrix& a, const Matrix& b) {
  size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  Matrix c(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

}  // namespace

IntVector::IntVector(std::vector<Int> entries) : entries_(std::move(entries)) {
  for (const Int& e : entries_) l1_ += abs_int(e);
}

IntVector IntVector::of(std::initializer_list<long long> entries) {
  std::vector<Int> v;
  v.reserve(entries.size());
  for (long long e : entries) v.emplace_back(e);
  return IntVector(std::move(v));
}

Matrix hnf(Matrix a) {
  if (a.empty()) return a;
  check_rect(a);
  size_t m = a.size(), k = a[0].size(), r = 0;
  for (size_t c = 0; c < k && r < m; ++c) {
    // gcd-eliminate the column below row r
    for (;;) {
      size_t best = m;
      for (size_t i = r; i < m; ++i) {
        if (a[i][c] == 0) continue;
        if (best == m || abs_int(a[i][c]) < abs_int(a[best][c])) best = i;
      }
      if (best == m) break;
      std::swap(a[r], a[best]);
      bool clean = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (a[i][c] == 0) continue;
        Int q = a[i][c] / a[r][c];
        row_axpy(a[i], q, a[r]);
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& e : a[r]) e = -e;
    for (size_t i = 0; i < r; ++i) {
      Int q = floor_div(a[i][c], a[r][c]);
      if (q != 0) row_axpy(a[i], q, a[r]);
    }
    ++r;
  }
  for (size_t i = r; i < m; ++i)
    for (const Int& e : a[i])
      if (e != 0) throw std::logic_error("hnf: nonzero entry below last pivot");
  a.resize(r);
  return a;
}

size_t rank_of(const Matrix& m) { return hnf(m).size(); }

Int det(Matrix a) {
  size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("det: matrix not square");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t c = 0; c + 1 < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      sign = -sign;
    }
    for (size_t i = c + 1; i < n; ++i) {
      for (size_t j = c + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[c][c];
  }
  return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

SnfResult snf(const Matrix& input) {
  if (!input.empty()) check_rect(input);
  size_t m = input.size(), k = m ? input[0].size() : 0;
  Matrix a = input;
  Matrix u = identity(m), v = identity(k);

  auto swap_rows = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](size_t i, size_t j) {
    for (size_t r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (size_t r = 0; r < k; ++r) std::swap(v[r][i], v[r][j]);
  };
  auto add_row = [&](size_t dst, const Int& q, size_t src) {
    // row dst -= q * row src
    row_axpy(a[dst], q, a[src]);
    row_axpy(u[dst], q, u[src]);
  };
  auto add_col = [&](size_t dst, const Int& q, size_t src) {
    for (size_t r = 0; r < m; ++r) a[r][dst] -= q * a[r][src];
    for (size_t r = 0; r < k; ++r) v[r][dst] -= q * v[r][src];
  };

  size_t steps = std::min(m, k);
  for (size_t t = 0; t < steps; ++t) {
    // pivot: smallest nonzero entry of the trailing block
    size_t pi = m, pj = k;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < k; ++j) {
        if (a[i][j] == 0) continue;
        if (pi == m || abs_int(a[i][j]) < abs_int(a[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    if (pi == m) break;
    if (pi != t) swap_rows(pi, t);
    if (pj != t) swap_cols(pj, t);

    for (;;) {
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        add_row(i, q, t);
        if (a[i][t] != 0) {
          swap_rows(i, t);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < k; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        add_col(j, q, t);
        if (a[t][j] != 0) {
          swap_cols(j, t);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      bool divides = true;
      for (size_t i = t + 1; i < m && divides; ++i)
        for (size_t j = t + 1; j < k; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_row(t, Int(-1), i);  // row t += row i, then re-clean
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (auto& e : a[t]) e = -e;
      for (auto& e : u[t]) e = -e;
    }
  }

  if (mul(mul(u, input), v) != a) throw std::logic_error("snf: U*M*V != D");
  if (abs_int(det(u)) != 1 || abs_int(det(v)) != 1)
    throw std::logic_error("snf: transform not unimodular");
  for (size_t t = 0; t + 1 < steps; ++t) {
    const Int& d0 = a[t][t];
    const Int& d1 = a[t + 1][t + 1];
    if (d0 == 0 ? d1 != 0 : d1 % d0 != 0)
      throw std::logic_error("snf: invariant factors out of order");
  }
  return SnfResult{std::move(a), std::move(u), std::move(v)};
}

LatticeBasis::LatticeBasis(size_t ambient_dim, std::vector<IntVector> rows)
    : ambient_(ambient_dim), rows_(std::move(rows)) {
  Matrix m;
  m.reserve(rows_.size());
  for (const auto& r : rows_) {
    if (r.size() != ambient_)
      throw std::invalid_argument("LatticeBasis: row dimension mismatch");
    m.push_back(r.entries());
  }
  hnf_ = hnf(std::move(m));
  if (hnf_.size() != rows_.size())
    throw std::invalid_argument("LatticeBasis: rows are linearly dependent");
  pivots_.reserve(hnf_.size());
  for (const auto& row : hnf_) {
    size_t c = 0;
    while (c < ambient_ && row[c] == 0) ++c;
    pivots_.push_back(c);
  }
}

LatticeBasis LatticeBasis::from_generators(size_t ambient_dim,
                                           const std::vector<IntVector>& gens) {
  Matrix m;
  m.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.size() != ambient_dim)
      throw std::invalid_argument("from_generators: dimension mismatch");
    m.push_back(g.entries());
  }
  Matrix h = hnf(std::move(m));
  std::vector<IntVector> rows;
  rows.reserve(h.size());
  for (auto& r : h) rows.emplace_back(std::move(r));
  return LatticeBasis(ambient_dim, std::move(rows));
}

bool span_membership(const LatticeBasis& l, const IntVector& v) {
  if (v.size() != l.ambient_dim())
    throw std::invalid_argument("span_membership: dimension mismatch");
  std::vector<Int> cur = v.entries();
  const Matrix& h = l.hnf_rows();
  for (size_t i = 0; i < h.size(); ++i) {
    size_t c = l.pivot_cols()[i];
    if (cur[c] % h[i][c] != 0) return false;
    Int q = cur[c] / h[i][c];
    if (q != 0) row_axpy(cur, q, h[i]);
  }
  for (const Int& e : cur)
    if (e != 0) return false;
  return true;
}

Int volume_squared(const LatticeBasis& l) {
  size_t r = l.rank();
  Matrix gram(r, std::vector<Int>(r, 0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i; j < r; ++j) {
      Int s = 0;
      for (size_t c = 0; c < l.ambient_dim(); ++c)
        s += l.rows()[i][c] * l.rows()[j][c];
      gram[i][j] = s;
      gram[j][i] = s;
    }
  Int d = det(std::move(gram));
  if (d <= 0) throw std::logic_error("volume_squared: Gram determinant not positive");
  return d;
}

Int lattice_index(const LatticeBasis& l, const LatticeBasis& lsub) {
  if (l.ambient_dim() != lsub.ambient_dim())
    throw std::invalid_argument("lattice_index: ambient dimension mismatch");
  if (l.rank() != lsub.rank())
    throw std::invalid_argument("lattice_index: rank mismatch");
  for (const auto& row : lsub.rows())
    if (!span_membership(l, row))
      throw std::invalid_argument("lattice_index: not a sublattice");
  Int num = volume_squared(lsub), den = volume_squared(l);
  if (num % den != 0)
    throw std::logic_error("lattice_index: volume ratio not integral");
  return isqrt_exact(num / den);
}

std::vector<IntVector> reduce_generating_set(const std::vector<IntVector>& f,
                                             long long big_d) {
  if (big_d < 2) throw std::invalid_argument("reduce_generating_set: big_d < 2");
  if (f.empty()) return {};
  size_t k = f[0].size();
  Int norm_cap = Int(3) * big_d;
  for (const auto& v : f) {
    if (v.size() != k)
      throw std::invalid_argument("reduce_generating_set: dimension mismatch");
    if (v.l1() > norm_cap)
      throw std::invalid_argument("reduce_generating_set: norm exceeds 3*big_d");
  }

  // Phase 1: a maximal independent subset, in input order.
  std::vector<IntVector> s;
  Matrix acc;
  for (const auto& v : f) {
    acc.push_back(v.entries());
    if (hnf(acc).size() == acc.size())
      s.push_back(v);
    else
      acc.pop_back();
  }

  // Phase 2: sweep for vectors outside the current integer span; each
  // accepted vector at least halves the covolume. Restart after every add.
  for (;;) {
    LatticeBasis cur = LatticeBasis::from_generators(k, s);
    bool grew = false;
    for (const auto& v : f) {
      if (!span_membership(cur, v)) {
        s.push_back(v);
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }

  LatticeBasis full = LatticeBasis::from_generators(k, f);
  LatticeBasis out = LatticeBasis::from_generators(k, s);
  if (full.hnf_rows() != out.hnf_rows())
    throw std::logic_error("reduce_generating_set: span changed");
  double bound = static_cast<double>(k) * (2.0 + std::log2(static_cast<double>(big_d)));
  if (static_cast<double>(s.size()) > bound)
    throw std::logic_error("reduce_generating_set: size bound exceeded");
  return s;
}

std::vector<IntVector> enumerate_l1_ball(size_t k, long long radius) {
  if (radius < 0) throw std::invalid_argument("enumerate_l1_ball: negative radius");
  std::vector<IntVector> out;
  std::vector<Int> cur(k, 0);
  auto rec = [&](auto&& self, size_t pos, long long budget) -> void {
    if (pos == k) {
      out.emplace_back(cur);
      return;
    }
    for (long long x = -budget; x <= budget; ++x) {
      cur[pos] = x;
      self(self, pos + 1, budget - std::llabs(x));
    }
  };
  rec(rec, 0, radius);
  return out;
}

Int l1_ball_size(size_t k, long long radius) {
  Int total = 0;
  long long cap = std::min<long long>(static_cast<long long>(k), radius);
  for (long long s = 0; s <= cap; ++s)
    total += (Int(1) << s) * binomial(static_cast<long long>(k), s) * binomial(radius, s);
  return total;
}

}  // namespace graphsum::lattice
