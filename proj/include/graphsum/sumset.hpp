#pragma once

#include "graphsum/abelian.hpp"
#include "graphsum/graphs.hpp"
#include "graphsum/lattice.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace graphsum::sumset {

using abelian::AbelianGroup;
using abelian::GroupElement;
using graphsum::Int;

// Injective vertex labeling into an abelian group.
class Labeling {
 public:
  Labeling() = default;  // empty labeling of the trivial group
  Labeling(AbelianGroup group, std::vector<GroupElement> assign);

  const AbelianGroup& group() const { return group_; }
  const std::vector<GroupElement>& assign() const { return assign_; }
  const GroupElement& at(int v) const { return assign_.at(v); }
  int n() const { return static_cast<int>(assign_.size()); }

 private:
  AbelianGroup group_;
  std::vector<GroupElement> assign_;
};

// Distinct edge sums A(u)+A(v), sorted by coordinates.
std::vector<GroupElement> eval_sumset(const graphs::Graph& g, const Labeling& l);

// Partition of the edge list into classes 0..num_classes-1 in
// restricted-growth form: the first edge of class j precedes the first edge
// of class j+1 in edge-list order.
class EdgeColoring {
 public:
  EdgeColoring(int num_classes, std::vector<int> color_by_edge);

  int num_classes() const { return num_classes_; }
  const std::vector<int>& colors() const { return colors_; }

 private:
  int num_classes_ = 0;
  std::vector<int> colors_;
};

// Output of the quotient reduction: formal vertex vectors over Z^k, one
// relation per non-tree edge, the quotient group with its projection, and
// the projected labeling, all cross-verified on construction.
struct CanonicalReduction {
  size_t k = 0;
  std::vector<std::vector<Int>> aprime;
  std::vector<lattice::IntVector> relations;
  AbelianGroup group;
  abelian::QuotientMap pi;
  Labeling labeling;
  std::vector<GroupElement> basis_images;  // images of the unit vectors
};

// Rebuilds the labeling of a connected graph over Z^k / relations, where k
// is the number of distinct edge sums. big_d must exceed the diameter;
// every relation satisfies |f|_1 <= 3*big_d.
CanonicalReduction canonical_reduction(const graphs::Graph& g, const Labeling& l,
                                       int big_d);

struct FeasibleColoring {
  AbelianGroup group;
  Labeling labeling;
  size_t realized_size = 0;
};

// Whether some labeling of the connected graph g induces exactly the given
// edge-sum partition pattern (two edges share a sum iff they share a class,
// up to class merging); returns a witness over the quotient group when so.
std::optional<FeasibleColoring> coloring_feasible(const graphs::Graph& g,
                                                  const EdgeColoring& c);

struct ExactOptions {
  int cap = 12;      // refuse graphs with more edges than this
  bool prune = true; // branch-and-bound on partial colorings
};

struct ExactResult {
  size_t size = 0;
  AbelianGroup group;
  Labeling labeling;
  EdgeColoring coloring;  // classes of the real edges
  int virtual_edges = 0;  // tree links added to join components
};

// Minimum sum-set size over all abelian groups and injective labelings,
// with an optimal witness. Disconnected inputs are joined by virtual tree
// edges whose sums are excluded from the count.
ExactResult exact_min_sumset(const graphs::Graph& g, const ExactOptions& opts = {});

struct HeuristicOptions {
  double initial_temp = 2.0;
  double final_temp = 0.05;
  long long stall_window = 0;  // 0: budget / 5
};

struct HeuristicResult {
  size_t size = 0;
  Labeling labeling;
};

// Simulated annealing over injective labelings into the fixed finite group
// h: greedy construction, swap/relabel moves, restart on stagnation. The
// result is an upper bound witness, never better than the exact optimum.
HeuristicResult heuristic_min_sumset(const graphs::Graph& g, const AbelianGroup& h,
                                     long long budget, uint64_t seed,
                                     const HeuristicOptions& opts = {});

// Labeling of `count` disjoint triangles over Z whose sum-set grows like
// the cube root: triangle t gets the t-th 3-subset of the alphabet 2*3^i.
Labeling triangle_construction(int count);

}  // namespace graphsum::sumset
