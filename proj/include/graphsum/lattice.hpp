#pragma once

#include "graphsum/bigint.hpp"

#include <initializer_list>
#include <vector>

namespace graphsum::lattice {

using graphsum::Int;
using Matrix = std::vector<std::vector<Int>>;

// Integer vector with a cached L1 norm.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::vector<Int> entries);
  static IntVector of(std::initializer_list<long long> entries);

  size_t size() const { return entries_.size(); }
  const Int& operator[](size_t i) const { return entries_[i]; }
  const std::vector<Int>& entries() const { return entries_; }
  const Int& l1() const { return l1_; }
  bool is_zero() const { return l1_ == 0; }

  friend bool operator==(const IntVector& a, const IntVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const IntVector& a, const IntVector& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<Int> entries_;
  Int l1_ = 0;
};

// Row-style Hermite normal form of the row span: zero rows removed, each
// pivot positive, entries above a pivot reduced into [0, pivot).
Matrix hnf(Matrix m);

size_t rank_of(const Matrix& m);

// Exact determinant of a square matrix (Bareiss, fraction-free).
Int det(Matrix m);

struct SnfResult {
  Matrix d;  // diagonal, invariant factors in divisibility order, zeros last
  Matrix u;  // unimodular
  Matrix v;  // unimodular, u * input * v == d
};
SnfResult snf(const Matrix& m);

// Full-rank list of independent rows spanning a lattice in Z^ambient.
class LatticeBasis {
 public:
  LatticeBasis(size_t ambient_dim, std::vector<IntVector> rows);
  // Builds a basis of the span of possibly dependent generators.
  static LatticeBasis from_generators(size_t ambient_dim,
                                      const std::vector<IntVector>& gens);

  size_t ambient_dim() const { return ambient_; }
  size_t rank() const { return rows_.size(); }
  const std::vector<IntVector>& rows() const { return rows_; }
  const Matrix& hnf_rows() const { return hnf_; }
  const std::vector<size_t>& pivot_cols() const { return pivots_; }

 private:
  size_t ambient_ = 0;
  std::vector<IntVector> rows_;
  Matrix hnf_;
  std::vector<size_t> pivots_;
};

// Whether v lies in the integer span of l (back-substitution on the HNF).
bool span_membership(const LatticeBasis& l, const IntVector& v);

// Squared covolume: det of the Gram matrix of the basis rows.
Int volume_squared(const LatticeBasis& l);

// [l : lsub] for a finite-index sublattice of the same rank.
Int lattice_index(const LatticeBasis& l, const LatticeBasis& lsub);

// Greedy generating-set reduction. Inputs must satisfy |f|_1 <= 3*big_d.
// The result spans the same lattice and has size <= k * (2 + log2(big_d)).
std::vector<IntVector> reduce_generating_set(const std::vector<IntVector>& f,
                                             long long big_d);

// All integer vectors of L1 norm <= radius in Z^k, lexicographic order.
std::vector<IntVector> enumerate_l1_ball(size_t k, long long radius);

// |{v in Z^k : |v|_1 <= radius}| in closed form.
Int l1_ball_size(size_t k, long long radius);

}  // namespace graphsum::lattice
