#include "graphsum/abelian.hpp"

#include "graphsum/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphsum::abelian {

namespace {

// Rewrites the finite moduli into an ascending divisibility chain with the
// same product, preserving the group up to isomorphism.
std::vector<Int> canonical_moduli(std::vector<Int> moduli) {
  std::vector<Int> finite;
  size_t free_count = 0;
  for (Int& m : moduli) {
    if (m < 0) throw std::invalid_argument("AbelianGroup: negative modulus");
    if (m == 0)
      ++free_count;
    else
      finite.push_back(std::move(m));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < finite.size(); ++i)
      for (size_t j = i + 1; j < finite.size(); ++j) {
        if (finite[j] % finite[i] == 0) continue;
        Int g = boost::multiprecision::gcd(finite[i], finite[j]);
        Int l = finite[i] / g * finite[j];
        finite[i] = g;
        finite[j] = std::move(l);
        changed = true;
      }
  }
  std::sort(finite.begin(), finite.end());
  std::vector<Int> out;
  for (Int& m : finite)
    if (m != 1) out.push_back(std::move(m));
  out.insert(out.end(), free_count, Int(0));
  return out;
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<Int> moduli, bool canonicalize) {
  if (canonicalize) {
    moduli_ = canonical_moduli(std::move(moduli));
  } else {
    for (const Int& m : moduli)
      if (m < 0) throw std::invalid_argument("AbelianGroup: negative modulus");
    moduli_ = std::move(moduli);
  }
}

bool AbelianGroup::is_canonical() const {
  size_t i = 0;
  for (; i < moduli_.size() && moduli_[i] != 0; ++i) {
    if (moduli_[i] == 1) return false;
    if (i > 0 && moduli_[i] % moduli_[i - 1] != 0) return false;
  }
  for (; i < moduli_.size(); ++i)
    if (moduli_[i] != 0) return false;
  return true;
}

bool AbelianGroup::finite() const {
  for (const Int& m : moduli_)
    if (m == 0) return false;
  return true;
}

std::optional<Int> AbelianGroup::order() const {
  if (!finite()) return std::nullopt;
  Int o = 1;
  for (const Int& m : moduli_) o *= m;
  return o;
}

GroupElement AbelianGroup::zero() const {
  return GroupElement{std::vector<Int>(moduli_.size(), 0)};
}

GroupElement AbelianGroup::element(std::vector<Int> coords) const {
  if (coords.size() != moduli_.size())
    throw std::invalid_argument("element: coordinate count mismatch");
  for (size_t i = 0; i < coords.size(); ++i)
    if (moduli_[i] != 0) coords[i] = pos_mod(coords[i], moduli_[i]);
  return GroupElement{std::move(coords)};
}

void AbelianGroup::check_element(const GroupElement& a) const {
  if (a.coords.size() != moduli_.size())
    throw std::invalid_argument("group mismatch: coordinate count differs");
  for (size_t i = 0; i < a.coords.size(); ++i)
    if (moduli_[i] != 0 && (a.coords[i] < 0 || a.coords[i] >= moduli_[i]))
      throw std::invalid_argument("group mismatch: coordinate out of range");
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check_element(a);
  check_element(b);
  std::vector<Int> c(moduli_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = a.coords[i] + b.coords[i];
    if (moduli_[i] != 0 && c[i] >= moduli_[i]) c[i] -= moduli_[i];
  }
  return GroupElement{std::move(c)};
}

GroupElement AbelianGroup::negate(const GroupElement& a) const {
  check_element(a);
  std::vector<Int> c(moduli_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (moduli_[i] == 0)
      c[i] = -a.coords[i];
    else
      c[i] = a.coords[i] == 0 ? Int(0) : Int(moduli_[i] - a.coords[i]);
  }
  return GroupElement{std::move(c)};
}

GroupElement AbelianGroup::scalar_mul(const Int& z, const GroupElement& a) const {
  check_element(a);
  std::vector<Int> c(moduli_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = z * a.coords[i];
    if (moduli_[i] != 0) c[i] = pos_mod(c[i], moduli_[i]);
  }
  return GroupElement{std::move(c)};
}

GroupElement AbelianGroup::dot_action(const std::vector<Int>& f,
                                      const std::vector<GroupElement>& elems) const {
  if (f.size() != elems.size())
    throw std::invalid_argument("dot_action: length mismatch");
  GroupElement acc = zero();
  for (size_t i = 0; i < f.size(); ++i)
    acc = add(acc, scalar_mul(f[i], elems[i]));
  return acc;
}

std::vector<GroupElement> AbelianGroup::enumerate_elements() const {
  auto o = order();
  if (!o) throw std::invalid_argument("enumerate_elements: group is infinite");
  if (*o > 10000000) throw std::invalid_argument("enumerate_elements: order too large");
  std::vector<GroupElement> out;
  out.reserve(static_cast<size_t>(*o));
  std::vector<Int> cur(moduli_.size(), 0);
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == moduli_.size()) {
      out.push_back(GroupElement{cur});
      return;
    }
    for (Int x = 0; x < moduli_[pos]; ++x) {
      cur[pos] = x;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

QuotientMap::QuotientMap(size_t source_dim, AbelianGroup group,
                         std::vector<std::vector<Int>> col_transform,
                         std::vector<size_t> kept_cols)
    : source_dim_(source_dim),
      group_(std::move(group)),
      col_(std::move(col_transform)),
      kept_(std::move(kept_cols)) {}

GroupElement QuotientMap::apply(const std::vector<Int>& x) const {
  if (x.size() != source_dim_)
    throw std::invalid_argument("QuotientMap::apply: dimension mismatch");
  std::vector<Int> y(kept_.size(), 0);
  for (size_t t = 0; t < kept_.size(); ++t) {
    size_t j = kept_[t];
    Int s = 0;
    for (size_t i = 0; i < source_dim_; ++i) {
      if (x[i] == 0) continue;
      s += x[i] * col_[i][j];
    }
    y[t] = std::move(s);
  }
  return group_.element(std::move(y));
}

std::pair<AbelianGroup, QuotientMap> quotient_group(
    size_t k, const std::vector<std::vector<Int>>& generators) {
  for (const auto& g : generators)
    if (g.size() != k)
      throw std::invalid_argument("quotient_group: generator dimension mismatch");

  if (generators.empty()) {
    // No relations: the quotient is Z^k and the map is the identity.
    std::vector<std::vector<Int>> id(k, std::vector<Int>(k, 0));
    std::vector<size_t> kept(k);
    for (size_t j = 0; j < k; ++j) {
      id[j][j] = 1;
      kept[j] = j;
    }
    AbelianGroup h(std::vector<Int>(k, 0), false);
    return {h, QuotientMap(k, h, std::move(id), std::move(kept))};
  }

  lattice::SnfResult s = lattice::snf(generators);
  size_t diag = std::min(generators.size(), k);

  // Column j of x*V carries Z_{d_j} for j < diag and Z beyond; d_j = 1
  // contributes nothing and d_j = 0 means the relation lattice misses that
  // direction entirely, leaving a free factor.
  std::vector<Int> moduli;
  std::vector<size_t> kept;
  for (size_t j = 0; j < k; ++j) {
    Int d = j < diag ? s.d[j][j] : Int(0);
    if (d == 1) continue;
    kept.push_back(j);
    moduli.push_back(std::move(d));
  }
  // Invariant factors come out of the SNF already in divisibility order
  // with zeros last, so the moduli list is canonical as is.
  AbelianGroup h(moduli, false);
  if (!h.is_canonical())
    throw std::logic_error("quotient_group: moduli not canonical");
  QuotientMap pi(k, h, s.v, std::move(kept));
  GroupElement z = h.zero();
  for (const auto& g : generators)
    if (!(pi.apply(g) == z))
      throw std::logic_error("quotient_group: projection does not kill a generator");
  return {std::move(h), std::move(pi)};
}

std::pair<AbelianGroup, QuotientMap> canonical_presentation(
    const std::vector<Int>& moduli) {
  const size_t k = moduli.size();
  std::vector<std::vector<Int>> relations;
  for (size_t i = 0; i < k; ++i) {
    if (moduli[i] < 0) throw std::invalid_argument("canonical_presentation: negative modulus");
    if (moduli[i] == 0) continue;  // free factor: no relation
    std::vector<Int> row(k, 0);
    row[i] = moduli[i];
    relations.push_back(std::move(row));
  }
  return quotient_group(k, relations);
}

}  // namespace graphsum::abelian
