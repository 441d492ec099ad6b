#include "graphsum/sumset.hpp"

#include "graphsum/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace graphsum::sumset {

using graphs::BfsTree;
using graphs::Graph;
using lattice::IntVector;
using lattice::LatticeBasis;

Labeling::Labeling(AbelianGroup group, std::vector<GroupElement> assign)
    : group_(std::move(group)), assign_(std::move(assign)) {
  std::set<std::vector<Int>> seen;
  for (const auto& a : assign_) {
    group_.check_element(a);
    if (!seen.insert(a.coords).second)
      throw std::invalid_argument("Labeling: assignment not injective");
  }
}

std::vector<GroupElement> eval_sumset(const Graph& g, const Labeling& l) {
  if (l.n() != g.n()) throw std::invalid_argument("eval_sumset: size mismatch");
  std::set<GroupElement> sums;
  for (const auto& e : g.edges())
    sums.insert(l.group().add(l.at(e.u), l.at(e.v)));
  return {sums.begin(), sums.end()};
}

EdgeColoring::EdgeColoring(int num_classes, std::vector<int> color_by_edge)
    : num_classes_(num_classes), colors_(std::move(color_by_edge)) {
  int next = 0;
  for (int c : colors_) {
    if (c < 0 || c >= num_classes_)
      throw std::invalid_argument("EdgeColoring: class id out of range");
    if (c > next) throw std::invalid_argument("EdgeColoring: not restricted-growth");
    if (c == next) ++next;
  }
  if (next != num_classes_)
    throw std::invalid_argument("EdgeColoring: class count mismatch");
}

namespace {

std::vector<Int> negated(const std::vector<Int>& v) {
  std::vector<Int> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

// Formal vertex vectors over Z^k from the tree recursion: the root is zero
// and each child is e_color(parent edge) minus its parent.
std::vector<std::vector<Int>> formal_vectors(const Graph& gg, const BfsTree& tree,
                                             const std::vector<int>& colors, int k) {
  std::vector<std::vector<Int>> ap(gg.n());
  ap[tree.root].assign(k, 0);
  for (int v : tree.order) {
    if (v == tree.root) continue;
    ap[v] = negated(ap[tree.parent[v]]);
    ap[v][colors[tree.parent_edge[v]]] += 1;
  }
  return ap;
}

std::vector<char> tree_edge_mask(const Graph& gg, const BfsTree& tree) {
  std::vector<char> mask(gg.m(), 0);
  for (int v : tree.order)
    if (v != tree.root) mask[tree.parent_edge[v]] = 1;
  return mask;
}

struct FullCheck {
  bool feasible = false;
  size_t realized = 0;
  AbelianGroup group;
  std::optional<Labeling> labeling;
  std::vector<IntVector> relations;
};

// Ground-truth feasibility of a complete coloring: builds the formal
// vectors, the relation lattice, and decides injectivity of the projected
// labeling by span membership of pairwise differences.
FullCheck check_coloring(const Graph& gg, const BfsTree& tree,
                         const std::vector<int>& colors, int k_total, int m_real,
                         bool want_witness) {
  auto ap = formal_vectors(gg, tree, colors, k_total);
  auto in_tree = tree_edge_mask(gg, tree);
  std::vector<IntVector> rels;
  for (int e = 0; e < gg.m(); ++e) {
    if (in_tree[e]) continue;
    const auto& ed = gg.edges()[e];
    std::vector<Int> f(static_cast<size_t>(k_total));
    for (int i = 0; i < k_total; ++i) f[i] = ap[ed.u][i] + ap[ed.v][i];
    f[colors[e]] -= 1;
    rels.emplace_back(std::move(f));
  }
  LatticeBasis span = LatticeBasis::from_generators(k_total, rels);

  FullCheck out;
  for (int u = 0; u < gg.n(); ++u)
    for (int v = u + 1; v < gg.n(); ++v) {
      std::vector<Int> diff(static_cast<size_t>(k_total));
      for (int i = 0; i < k_total; ++i) diff[i] = ap[u][i] - ap[v][i];
      if (span_membership(span, IntVector(std::move(diff)))) return out;
    }
  out.feasible = true;

  // distinct projected sums over the real edges: used classes merged
  // whenever the difference of their unit vectors lies in the span
  std::vector<int> used;
  for (int e = 0; e < m_real; ++e) used.push_back(colors[e]);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<int> reps;
  for (int c : used) {
    bool merged = false;
    for (int r : reps) {
      std::vector<Int> diff(static_cast<size_t>(k_total), 0);
      diff[c] += 1;
      diff[r] -= 1;
      if (span_membership(span, IntVector(std::move(diff)))) {
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(c);
  }
  out.realized = reps.size();
  out.relations = rels;

  if (want_witness) {
    std::vector<std::vector<Int>> rows;
    rows.reserve(rels.size());
    for (const auto& r : rels) rows.push_back(r.entries());
    auto [hq, pi] = abelian::quotient_group(static_cast<size_t>(k_total), rows);
    std::vector<GroupElement> lab(gg.n());
    for (int v = 0; v < gg.n(); ++v) lab[v] = pi.apply(ap[v]);
    out.group = hq;
    try {
      out.labeling.emplace(hq, std::move(lab));
    } catch (const std::invalid_argument&) {
      throw std::logic_error("check_coloring: projection lost injectivity");
    }
  }
  return out;
}

// Branch-and-bound enumeration of restricted-growth colorings of the real
// edges. Virtual edges carry fixed extra classes. Pruning tracks vertex
// vectors determined by colored tree edges plus the partial relation span;
// both only ever shrink the feasible set, so no witness is missed.
class Searcher {
 public:
  Searcher(const Graph& gg, int m_real, bool prune)
      : gg_(gg), tree_(bfs_spanning_tree(gg, 0)), m_real_(m_real), prune_(prune) {
    m_ = gg.m();
    n_ = gg.n();
    in_tree_ = tree_edge_mask(gg_, tree_);
    child_of_edge_.assign(m_, -1);
    for (int v : tree_.order)
      if (v != tree_.root) child_of_edge_[tree_.parent_edge[v]] = v;
  }

  struct Hit {
    std::vector<int> real_colors;
    FullCheck check;
  };

  std::optional<Hit> search(int k_real) {
    k_real_ = k_real;
    k_total_ = k_real + (m_ - m_real_);
    colors_.assign(m_, -1);
    for (int j = 0; j < m_ - m_real_; ++j) colors_[m_real_ + j] = k_real + j;
    used_ = 0;
    det_.assign(n_, 0);
    ap_.assign(n_, {});
    det_list_.clear();
    rels_.clear();
    rel_edges_.clear();
    rel_added_.assign(m_, 0);
    basis_.reset();
    hit_.reset();

    if (prune_) {
      ap_[tree_.root].assign(k_total_, 0);
      det_[tree_.root] = 1;
      det_list_.push_back(tree_.root);
      if (!cascade(tree_.root)) return std::nullopt;  // virtual edges alone clash
    }
    dfs(0);
    return std::move(hit_);
  }

 private:
  bool dfs(int i) {
    if (i == m_real_) {
      if (used_ != k_real_) return false;
      FullCheck fc = check_coloring(gg_, tree_, colors_, k_total_, m_real_, false);
      if (!fc.feasible) {
        if (prune_)
          throw std::logic_error("exact search: incremental state disagrees with full check");
        return false;
      }
      Hit h;
      h.real_colors.assign(colors_.begin(), colors_.begin() + m_real_);
      h.check = check_coloring(gg_, tree_, colors_, k_total_, m_real_, true);
      hit_ = std::move(h);
      return true;
    }
    int max_c = std::min(used_, k_real_ - 1);
    for (int c = 0; c <= max_c; ++c) {
      int used2 = used_ + (c == used_ ? 1 : 0);
      if (used2 + (m_real_ - i - 1) < k_real_) continue;
      colors_[i] = c;
      int old_used = used_;
      used_ = used2;
      size_t dm = det_list_.size(), rm = rel_edges_.size();
      bool viable = prune_ ? on_colored(i) : true;
      if (viable && dfs(i + 1)) return true;
      rollback(dm, rm);
      colors_[i] = -1;
      used_ = old_used;
    }
    return false;
  }

  bool on_colored(int e) {
    if (in_tree_[e]) {
      int child = child_of_edge_[e];
      if (det_[tree_.parent[child]] && !det_[child]) return determine(child, e);
      return true;
    }
    const auto& ed = gg_.edges()[e];
    if (det_[ed.u] && det_[ed.v]) return add_relation(e);
    return true;
  }

  bool determine(int v, int via_edge) {
    ap_[v] = negated(ap_[tree_.parent[v]]);
    ap_[v][colors_[via_edge]] += 1;
    det_[v] = 1;
    det_list_.push_back(v);
    for (int u : det_list_) {
      if (u == v) continue;
      std::vector<Int> diff(static_cast<size_t>(k_total_));
      for (int i = 0; i < k_total_; ++i) diff[i] = ap_[v][i] - ap_[u][i];
      if (member(IntVector(std::move(diff)))) return false;
    }
    return cascade(v);
  }

  // Pushes determinations across colored tree edges below v and collects
  // relations of colored non-tree edges that just became complete.
  bool cascade(int v) {
    for (auto [w, id] : gg_.incident(v)) {
      if (colors_[id] < 0) continue;
      if (in_tree_[id]) {
        if (child_of_edge_[id] == w && !det_[w]) {
          if (!determine(w, id)) return false;
        }
      } else if (det_[w] && !rel_added_[id]) {
        if (!add_relation(id)) return false;
      }
    }
    return true;
  }

  bool add_relation(int e) {
    const auto& ed = gg_.edges()[e];
    std::vector<Int> f(static_cast<size_t>(k_total_));
    for (int i = 0; i < k_total_; ++i) f[i] = ap_[ed.u][i] + ap_[ed.v][i];
    f[colors_[e]] -= 1;
    rels_.emplace_back(std::move(f));
    rel_edges_.push_back(e);
    rel_added_[e] = 1;
    basis_.reset();
    // a larger span can merge previously distinct vertex vectors
    for (size_t a = 0; a < det_list_.size(); ++a)
      for (size_t b = a + 1; b < det_list_.size(); ++b) {
        std::vector<Int> diff(static_cast<size_t>(k_total_));
        for (int i = 0; i < k_total_; ++i)
          diff[i] = ap_[det_list_[a]][i] - ap_[det_list_[b]][i];
        if (member(IntVector(std::move(diff)))) return false;
      }
    return true;
  }

  bool member(const IntVector& v) {
    if (!basis_) basis_.emplace(LatticeBasis::from_generators(k_total_, rels_));
    return span_membership(*basis_, v);
  }

  void rollback(size_t det_mark, size_t rel_mark) {
    while (det_list_.size() > det_mark) {
      det_[det_list_.back()] = 0;
      det_list_.pop_back();
    }
    while (rel_edges_.size() > rel_mark) {
      rel_added_[rel_edges_.back()] = 0;
      rel_edges_.pop_back();
      rels_.pop_back();
      basis_.reset();
    }
  }

  const Graph& gg_;
  BfsTree tree_;
  int m_real_, m_ = 0, n_ = 0;
  bool prune_;
  std::vector<char> in_tree_;
  std::vector<int> child_of_edge_;
  int k_real_ = 0, k_total_ = 0, used_ = 0;
  std::vector<int> colors_;
  std::vector<char> det_;
  std::vector<std::vector<Int>> ap_;
  std::vector<int> det_list_;
  std::vector<IntVector> rels_;
  std::vector<int> rel_edges_;
  std::vector<char> rel_added_;
  std::optional<LatticeBasis> basis_;
  std::optional<Hit> hit_;
};

}  // namespace

CanonicalReduction canonical_reduction(const Graph& g, const Labeling& l, int big_d) {
  if (g.n() == 0) throw std::invalid_argument("canonical_reduction: empty graph");
  if (!g.connected())
    throw std::invalid_argument("canonical_reduction: graph must be connected");
  if (l.n() != g.n())
    throw std::invalid_argument("canonical_reduction: labeling size mismatch");
  auto diam = graphs::diameter(g);
  if (big_d <= *diam)
    throw std::invalid_argument("canonical_reduction: big_d must exceed the diameter");

  const AbelianGroup& h = l.group();
  GroupElement shift = h.negate(l.at(0));
  std::vector<GroupElement> a(g.n());
  for (int v = 0; v < g.n(); ++v) a[v] = h.add(l.at(v), shift);

  // distinct edge sums, numbered by first appearance in edge-list order
  std::vector<GroupElement> sums;
  std::map<GroupElement, int> sum_index;
  std::vector<int> sum_of_edge(g.m());
  for (int e = 0; e < g.m(); ++e) {
    const auto& ed = g.edges()[e];
    GroupElement s = h.add(a[ed.u], a[ed.v]);
    auto it = sum_index.find(s);
    if (it == sum_index.end()) {
      it = sum_index.emplace(s, static_cast<int>(sums.size())).first;
      sums.push_back(s);
    }
    sum_of_edge[e] = it->second;
  }
  int k = static_cast<int>(sums.size());

  BfsTree tree = bfs_spanning_tree(g, 0);
  auto ap = formal_vectors(g, tree, sum_of_edge, k);
  auto in_tree = tree_edge_mask(g, tree);

  CanonicalReduction red;
  red.k = static_cast<size_t>(k);
  red.aprime = ap;
  Int norm_cap = Int(3) * big_d;
  std::vector<std::vector<Int>> rows;
  for (int e = 0; e < g.m(); ++e) {
    if (in_tree[e]) continue;
    const auto& ed = g.edges()[e];
    std::vector<Int> f(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) f[i] = ap[ed.u][i] + ap[ed.v][i];
    f[sum_of_edge[e]] -= 1;
    IntVector fv(f);
    if (fv.l1() > norm_cap)
      throw std::logic_error("canonical_reduction: relation norm exceeds 3*big_d");
    red.relations.push_back(std::move(fv));
    rows.push_back(std::move(f));
  }

  auto [hq, pi] = abelian::quotient_group(static_cast<size_t>(k), rows);
  std::vector<GroupElement> proj(g.n());
  for (int v = 0; v < g.n(); ++v) proj[v] = pi.apply(ap[v]);
  red.group = hq;

  for (int i = 0; i < k; ++i) {
    std::vector<Int> e_i(static_cast<size_t>(k), 0);
    e_i[i] = 1;
    red.basis_images.push_back(pi.apply(e_i));
  }

  // the formal vectors reproduce the translated labeling through the sums
  for (int v = 0; v < g.n(); ++v)
    if (!(h.dot_action(ap[v], sums) == a[v]))
      throw std::logic_error("canonical_reduction: vertex vector check failed");
  // every relation annihilates the sums
  GroupElement hz = h.zero();
  for (const auto& f : red.relations)
    if (!(h.dot_action(f.entries(), sums) == hz))
      throw std::logic_error("canonical_reduction: relation check failed");
  // the dot action is constant on fibers of the projection (spot check over
  // shifted representatives of each vertex vector)
  for (int v = 0; v < g.n(); ++v) {
    std::vector<Int> x = ap[v];
    for (size_t t = 0; t < red.relations.size(); ++t) {
      Int c = static_cast<int>((v + t) % 3) - 1;
      for (int i = 0; i < k; ++i) x[i] += c * red.relations[t][i];
    }
    if (!(h.dot_action(x, sums) == a[v]))
      throw std::logic_error("canonical_reduction: fiber check failed");
  }

  try {
    red.labeling = Labeling(hq, proj);
  } catch (const std::invalid_argument&) {
    throw std::logic_error("canonical_reduction: projected labeling not injective");
  }
  // each projected edge sum equals the image of its sum's unit vector
  for (int e = 0; e < g.m(); ++e) {
    const auto& ed = g.edges()[e];
    if (!(hq.add(proj[ed.u], proj[ed.v]) == red.basis_images[sum_of_edge[e]]))
      throw std::logic_error("canonical_reduction: edge sum image mismatch");
  }
  red.pi = std::move(pi);
  return red;
}

std::optional<FeasibleColoring> coloring_feasible(const Graph& g,
                                                  const EdgeColoring& c) {
  if (!g.connected())
    throw std::invalid_argument("coloring_feasible: graph must be connected");
  if (static_cast<int>(c.colors().size()) != g.m())
    throw std::invalid_argument("coloring_feasible: coloring size mismatch");
  BfsTree tree = bfs_spanning_tree(g, 0);
  FullCheck fc =
      check_coloring(g, tree, c.colors(), c.num_classes(), g.m(), true);
  if (!fc.feasible) return std::nullopt;
  return FeasibleColoring{fc.group, std::move(*fc.labeling), fc.realized};
}

ExactResult exact_min_sumset(const Graph& g, const ExactOptions& opts) {
  if (g.allows_loops())
    throw std::invalid_argument("exact_min_sumset: loops unsupported");
  if (g.m() > opts.cap)
    throw std::invalid_argument("exact_min_sumset: edge count exceeds cap");

  if (g.m() == 0) {
    // no search needed, but virtual joins are still reported so that the
    // metadata means the same thing for every disconnected input
    AbelianGroup z(std::vector<Int>{0}, false);
    std::vector<GroupElement> lab;
    for (int v = 0; v < g.n(); ++v) lab.push_back(GroupElement{{Int(v)}});
    int virt = g.n() > 0 ? static_cast<int>(g.components().size()) - 1 : 0;
    return ExactResult{0, z, Labeling(z, std::move(lab)), EdgeColoring(0, {}), virt};
  }

  auto comps = g.components();
  Graph gg(g.n());
  for (const auto& e : g.edges()) gg.add_edge(e.u, e.v);
  for (size_t i = 1; i < comps.size(); ++i)
    gg.add_edge(comps[0].front(), comps[i].front());
  int virt = static_cast<int>(comps.size()) - 1;

  Searcher searcher(gg, g.m(), opts.prune);
  for (int k = 1; k <= g.m(); ++k) {
    auto hit = searcher.search(k);
    if (!hit) continue;
    if (static_cast<int>(hit->check.realized) != k)
      throw std::logic_error("exact_min_sumset: realized size differs from class count");
    return ExactResult{static_cast<size_t>(k), hit->check.group,
                       std::move(*hit->check.labeling),
                       EdgeColoring(k, std::move(hit->real_colors)), virt};
  }
  throw std::logic_error("exact_min_sumset: no feasible coloring found");
}

HeuristicResult heuristic_min_sumset(const Graph& g, const AbelianGroup& h,
                                     long long budget, uint64_t seed,
                                     const HeuristicOptions& opts) {
  auto order = h.order();
  if (!order) throw std::invalid_argument("heuristic_min_sumset: group must be finite");
  if (*order < g.n())
    throw std::invalid_argument("heuristic_min_sumset: group smaller than vertex count");
  if (budget < 0) throw std::invalid_argument("heuristic_min_sumset: negative budget");

  std::vector<GroupElement> elems = h.enumerate_elements();
  int n = g.n();
  size_t pool = elems.size();
  Rng rng(derive_seed(seed, 0x73756d686575ULL));

  // greedy: highest-degree vertices first, each taking the unused element
  // that adds the fewest new sums against already-labeled neighbors
  std::vector<int> vorder(n);
  for (int v = 0; v < n; ++v) vorder[v] = v;
  std::stable_sort(vorder.begin(), vorder.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> label(n, -1);
  std::vector<char> taken(pool, 0);
  std::set<std::vector<Int>> sums;
  for (int v : vorder) {
    int best = -1;
    size_t best_new = 0;
    for (size_t cand = 0; cand < pool; ++cand) {
      if (taken[cand]) continue;
      std::set<std::vector<Int>> fresh;
      for (auto [w, id] : g.incident(v)) {
        if (label[w] < 0) continue;
        auto s = h.add(elems[cand], elems[label[w]]).coords;
        if (!sums.count(s)) fresh.insert(std::move(s));
      }
      if (best < 0 || fresh.size() < best_new) {
        best = static_cast<int>(cand);
        best_new = fresh.size();
      }
    }
    label[v] = best;
    taken[best] = 1;
    for (auto [w, id] : g.incident(v))
      if (label[w] >= 0) sums.insert(h.add(elems[label[v]], elems[label[w]]).coords);
  }

  auto objective = [&](const std::vector<int>& lb) {
    std::set<std::vector<Int>> s;
    for (const auto& e : g.edges())
      s.insert(h.add(elems[lb[e.u]], elems[lb[e.v]]).coords);
    return s.size();
  };

  std::vector<int> cur = label, best_lb = label;
  size_t cur_obj = objective(cur), best_obj = cur_obj;
  long long stall = opts.stall_window > 0 ? opts.stall_window
                                          : std::max<long long>(budget / 5, 1);
  long long since_best = 0;
  double t0 = opts.initial_temp, t1 = opts.final_temp;

  std::vector<int> unused;
  for (size_t i = 0; i < pool; ++i) unused.push_back(static_cast<int>(i));
  auto rebuild_unused = [&](const std::vector<int>& lb) {
    std::vector<char> tk(pool, 0);
    for (int x : lb) tk[x] = 1;
    unused.clear();
    for (size_t i = 0; i < pool; ++i)
      if (!tk[i]) unused.push_back(static_cast<int>(i));
  };
  rebuild_unused(cur);

  for (long long step = 0; step < budget && n >= 2; ++step) {
    double frac = budget > 1 ? static_cast<double>(step) / (budget - 1) : 0.0;
    double temp = t0 * std::pow(t1 / t0, frac);
    std::vector<int> next = cur;
    int relabeled_vertex = -1, relabel_slot = -1;
    if (!unused.empty() && rng.chance(0.5)) {
      relabeled_vertex = static_cast<int>(rng.below(n));
      relabel_slot = static_cast<int>(rng.below(unused.size()));
      next[relabeled_vertex] = unused[relabel_slot];
    } else {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n - 1));
      if (v >= u) ++v;
      std::swap(next[u], next[v]);
    }
    size_t next_obj = objective(next);
    bool accept = next_obj <= cur_obj ||
                  rng.unit() < std::exp((static_cast<double>(cur_obj) -
                                         static_cast<double>(next_obj)) /
                                        temp);
    if (accept) {
      if (relabeled_vertex >= 0) unused[relabel_slot] = cur[relabeled_vertex];
      cur = std::move(next);
      cur_obj = next_obj;
    }
    if (cur_obj < best_obj) {
      best_obj = cur_obj;
      best_lb = cur;
      since_best = 0;
    } else if (++since_best >= stall) {
      cur = best_lb;
      cur_obj = best_obj;
      rebuild_unused(cur);
      since_best = 0;
    }
  }

  std::vector<GroupElement> assign;
  assign.reserve(n);
  for (int v = 0; v < n; ++v) assign.push_back(elems[best_lb[v]]);
  return HeuristicResult{best_obj, Labeling(h, std::move(assign))};
}

Labeling triangle_construction(int count) {
  if (count < 1) throw std::invalid_argument("triangle_construction: need at least one triangle");
  AbelianGroup z(std::vector<Int>{0}, false);

  // colex rank -> 3-subset {i < j < k}: t = C(k,3) + C(j,2) + C(i,1)
  std::vector<std::array<int, 3>> triples(count);
  {
    int kk = 2;
    for (int t = 0; t < count; ++t) {
      while (binomial(kk + 1, 3) <= t) ++kk;
      Int rem = Int(t) - binomial(kk, 3);
      int jj = 1;
      while (binomial(jj + 1, 2) <= rem) ++jj;
      rem -= binomial(jj, 2);
      triples[t] = {static_cast<int>(rem), jj, kk};
    }
  }
  int symbols = 0;
  for (const auto& tr : triples) symbols = std::max(symbols, tr[2] + 1);

  for (Int scale = 1;; scale *= 3) {
    if (scale > 10000) throw std::logic_error("triangle_construction: no injective scale");
    std::vector<Int> w(symbols);
    Int x = 2 * scale;
    for (int i = 0; i < symbols; ++i, x *= 3) w[i] = x;
    std::vector<GroupElement> assign;
    assign.reserve(3 * static_cast<size_t>(count));
    for (const auto& tr : triples) {
      const Int &p = w[tr[0]], &q = w[tr[1]], &r = w[tr[2]];
      assign.push_back(GroupElement{{(p + q - r) / 2}});
      assign.push_back(GroupElement{{(p - q + r) / 2}});
      assign.push_back(GroupElement{{(-p + q + r) / 2}});
    }
    std::set<Int> distinct;
    for (const auto& a : assign) distinct.insert(a.coords[0]);
    if (distinct.size() != assign.size()) continue;

    Labeling lab(z, std::move(assign));
    if (count > 0) {
      auto sums = eval_sumset(graphs::disjoint_triangles(count), lab);
      std::set<Int> touched;
      for (const auto& tr : triples)
        for (int idx : tr) touched.insert(w[idx]);
      if (sums.size() != touched.size())
        throw std::logic_error("triangle_construction: sum-set is not the touched alphabet");
      Int need = Int(6) * count;
      Int c = 1;
      while (c * c * c < need) ++c;
      if (Int(sums.size()) > c + 3)
        throw std::logic_error("triangle_construction: size bound violated");
    }
    return lab;
  }
}

}  // namespace graphsum::sumset
