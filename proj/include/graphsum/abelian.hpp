#pragma once

#include "graphsum/bigint.hpp"

#include <optional>
#include <vector>

namespace graphsum::abelian {

using graphsum::Int;

// Element of a finitely generated abelian group, stored as one coordinate
// per factor of the owning group's moduli list. Plain value type; all
// arithmetic lives on AbelianGroup so mixed-group operands are caught.
struct GroupElement {
  std::vector<Int> coords;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords < b.coords;
  }
};

// Z_{m_1} x ... x Z_{m_r} x Z^z, one modulus per factor, 0 meaning a free
// factor. The canonical form has the finite moduli as a divisibility chain
// m_1 | m_2 | ..., no trivial factors, and free factors last.
class AbelianGroup {
 public:
  AbelianGroup() = default;  // trivial group
  explicit AbelianGroup(std::vector<Int> moduli, bool canonicalize = true);

  const std::vector<Int>& moduli() const { return moduli_; }
  size_t factors() const { return moduli_.size(); }
  bool is_canonical() const;
  bool finite() const;
  // Product of the moduli when finite, nullopt when some factor is free.
  std::optional<Int> order() const;

  GroupElement zero() const;
  // Reduces arbitrary integer coordinates into the group.
  GroupElement element(std::vector<Int> coords) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scalar_mul(const Int& z, const GroupElement& a) const;
  // sum_i f[i] * elems[i]; negative coefficients act by repeated negation.
  GroupElement dot_action(const std::vector<Int>& f,
                          const std::vector<GroupElement>& elems) const;

  // All elements in lexicographic coordinate order; finite groups only.
  std::vector<GroupElement> enumerate_elements() const;

  void check_element(const GroupElement& a) const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.moduli_ == b.moduli_;
  }

 private:
  std::vector<Int> moduli_;
};

// Projection Z^k -> Z^k / span(F) produced by quotient_group. Applies a
// unimodular column transform and reduces by the invariant factors.
class QuotientMap {
 public:
  QuotientMap() = default;  // map from Z^0 onto the trivial group
  QuotientMap(size_t source_dim, AbelianGroup group,
              std::vector<std::vector<Int>> col_transform,
              std::vector<size_t> kept_cols);

  size_t source_dim() const { return source_dim_; }
  const AbelianGroup& group() const { return group_; }
  GroupElement apply(const std::vector<Int>& x) const;

 private:
  size_t source_dim_ = 0;
  AbelianGroup group_;
  std::vector<std::vector<Int>> col_;  // k x k unimodular
  std::vector<size_t> kept_;           // columns surviving the quotient
};

// Z^k / span(generators) in canonical form, with its projection map.
// The map is verified to kill every generator.
std::pair<AbelianGroup, QuotientMap> quotient_group(
    size_t k, const std::vector<std::vector<Int>>& generators);

// Canonical form of the product group presented by an arbitrary moduli
// list, together with the projection that remaps positional coordinate
// vectors of the presentation into the canonical group.
std::pair<AbelianGroup, QuotientMap> canonical_presentation(
    const std::vector<Int>& moduli);

}  // namespace graphsum::abelian
