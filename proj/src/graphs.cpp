#include "graphsum/graphs.hpp"

#include "graphsum/rng.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace graphsum::graphs {

Graph::Graph(int n, bool allow_loops) : n_(n), allow_loops_(allow_loops), inc_(n) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("add_edge: vertex out of range");
  if (u == v && !allow_loops_) throw std::invalid_argument("add_edge: loop rejected");
  if (u > v) std::swap(u, v);
  if (has_edge(u, v)) throw std::invalid_argument("add_edge: duplicate edge");
  int id = static_cast<int>(edges_.size());
  edges_.push_back(Edge{u, v});
  inc_[u].emplace_back(v, id);
  if (u != v) inc_[v].emplace_back(u, id);
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                        bool allow_loops) {
  Graph g(n, allow_loops);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

const std::vector<std::pair<int, int>>& Graph::incident(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("incident: vertex out of range");
  return inc_[v];
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  out.reserve(incident(v).size());
  for (auto [w, id] : inc_[v]) out.push_back(w);
  return out;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& shorter = inc_[u].size() <= inc_[v].size() ? inc_[u] : inc_[v];
  int other = inc_[u].size() <= inc_[v].size() ? v : u;
  for (auto [w, id] : shorter)
    if (w == other) return true;
  return false;
}

int Graph::degree(int v) const { return static_cast<int>(incident(v).size()); }

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

bool Graph::connected() const {
  return n_ == 0 || static_cast<int>(components().size()) == 1;
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(n_, 0);
  for (int s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (auto [w, id] : inc_[v])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

Graph path(int n) {
  if (n < 1) throw std::invalid_argument("path: need at least one vertex");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: need at least 3 vertices");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  g.add_edge(0, n - 1);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

Graph disjoint_triangles(int count) {
  if (count < 1) throw std::invalid_argument("disjoint_triangles: need at least one triangle");
  Graph g(3 * count);
  for (int t = 0; t < count; ++t) {
    g.add_edge(3 * t, 3 * t + 1);
    g.add_edge(3 * t, 3 * t + 2);
    g.add_edge(3 * t + 1, 3 * t + 2);
  }
  return g;
}

Graph random_regular(int n, int d, uint64_t seed) {
  if (d < 3 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("random_regular: need 3 <= d < n with d*n even");
  Rng rng(derive_seed(seed, 0x7265677565ULL));
  std::vector<int> stubs(static_cast<size_t>(n) * d);
  for (size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<int>(i) / d;
  const int max_attempts = 200000;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    rng.shuffle(stubs);
    std::set<std::pair<int, int>> used;
    bool ok = true;
    for (size_t i = 0; ok && i < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      else if (!used.emplace(std::min(u, v), std::max(u, v)).second) ok = false;
    }
    if (!ok) continue;
    Graph g(n);
    for (auto [u, v] : used) g.add_edge(u, v);
    return g;
  }
  throw std::runtime_error("random_regular: rejection budget exhausted");
}

std::optional<int> diameter(const Graph& g) {
  if (g.n() == 0) return 0;
  int best = 0;
  for (int s = 0; s < g.n(); ++s) {
    std::vector<int> dist(g.n(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [w, id] : g.incident(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    for (int v = 0; v < g.n(); ++v) {
      if (dist[v] < 0) return std::nullopt;
      best = std::max(best, dist[v]);
    }
  }
  return best;
}

BfsTree bfs_spanning_tree(const Graph& g, int root) {
  if (root < 0 || root >= g.n())
    throw std::invalid_argument("bfs_spanning_tree: root out of range");
  BfsTree t;
  t.root = root;
  t.parent.assign(g.n(), -1);
  t.parent_edge.assign(g.n(), -1);
  t.depth.assign(g.n(), -1);
  std::deque<int> queue{root};
  t.depth[root] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    for (auto [w, id] : g.incident(v))
      if (t.depth[w] < 0) {
        t.depth[w] = t.depth[v] + 1;
        t.parent[w] = v;
        t.parent_edge[w] = id;
        queue.push_back(w);
      }
  }
  return t;
}

namespace {

class EdgeColorer {
 public:
  explicit EdgeColorer(const Graph& g)
      : g_(g), max_c_(g.max_degree() + 1), col_(g.m(), -1),
        at_(g.n(), std::vector<int>(max_c_, -1)) {}

  std::vector<std::vector<int>> run() {
    for (int e = 0; e < g_.m(); ++e) color_edge(e);
    compact();
    verify();
    return classes();
  }

 private:
  bool free_on(int v, int c) const { return at_[v][c] < 0; }

  int free_color(int v) const {
    for (int c = 0; c < max_c_; ++c)
      if (free_on(v, c)) return c;
    throw std::logic_error("edge_color: no free color at vertex");
  }

  void set_color(int e, int c) {
    col_[e] = c;
    at_[g_.edges()[e].u][c] = e;
    at_[g_.edges()[e].v][c] = e;
  }

  void unset_color(int e) {
    int c = col_[e];
    at_[g_.edges()[e].u][c] = -1;
    at_[g_.edges()[e].v][c] = -1;
    col_[e] = -1;
  }

  int edge_between(int u, int w) const {
    for (auto [x, id] : g_.incident(u))
      if (x == w) return id;
    throw std::logic_error("edge_color: missing edge in fan");
  }

  // Maximal fan of u starting at v: each next vertex w is a neighbor whose
  // edge to u is colored with a color free on the previous fan vertex.
  std::vector<int> build_fan(int u, int v) const {
    std::vector<int> fan{v};
    std::vector<char> in_fan(g_.n(), 0);
    in_fan[v] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto [w, id] : g_.incident(u)) {
        if (in_fan[w] || col_[id] < 0) continue;
        if (free_on(fan.back(), col_[id])) {
          fan.push_back(w);
          in_fan[w] = 1;
          grew = true;
          break;
        }
      }
    }
    return fan;
  }

  void invert_path(int start, int c, int d) {
    // Maximal path from start alternating colors d, c; flips both colors.
    std::vector<int> path_edges;
    int cur = start, want = d;
    for (;;) {
      int e = at_[cur][want];
      if (e < 0) break;
      path_edges.push_back(e);
      cur = g_.edges()[e].u == cur ? g_.edges()[e].v : g_.edges()[e].u;
      want = want == d ? c : d;
    }
    for (int e : path_edges) unset_color(e);
    for (size_t j = 0; j < path_edges.size(); ++j)
      set_color(path_edges[j], j % 2 == 0 ? c : d);
  }

  void color_edge(int e0) {
    int u = g_.edges()[e0].u, v = g_.edges()[e0].v;
    std::vector<int> fan = build_fan(u, v);
    int c = free_color(u);
    int d = free_color(fan.back());
    if (!free_on(u, d)) invert_path(u, c, d);
    // first fan prefix that is still valid and ends where d is free
    int w = -1;
    for (size_t i = 0; i < fan.size(); ++i) {
      if (i > 0) {
        int fe = edge_between(u, fan[i]);
        if (col_[fe] < 0 || !free_on(fan[i - 1], col_[fe])) break;
      }
      if (free_on(fan[i], d)) {
        w = static_cast<int>(i);
        break;
      }
    }
    if (w < 0) throw std::logic_error("edge_color: no rotation point");
    for (int i = 0; i < w; ++i) {
      int cur_e = i == 0 ? e0 : edge_between(u, fan[i]);
      int next_e = edge_between(u, fan[i + 1]);
      int next_c = col_[next_e];
      unset_color(next_e);
      if (cur_e != e0 && col_[cur_e] >= 0) unset_color(cur_e);
      set_color(cur_e, next_c);
    }
    int last_e = w == 0 ? e0 : edge_between(u, fan[w]);
    if (col_[last_e] >= 0) unset_color(last_e);
    set_color(last_e, d);
  }

  // Tries to dissolve the smallest class by moving its edges to colors free
  // at both endpoints; drops the class when it empties.
  void compact() {
    for (;;) {
      auto cl = classes();
      if (cl.size() <= 1) return;
      size_t smallest = 0;
      for (size_t i = 1; i < cl.size(); ++i)
        if (cl[i].size() < cl[smallest].size()) smallest = i;
      std::set<int> live;
      for (int e = 0; e < g_.m(); ++e) live.insert(col_[e]);
      bool emptied = true;
      for (int e : cl[smallest]) {
        int old = col_[e];
        bool moved = false;
        for (int c : live) {
          if (c == old) continue;
          if (free_on(g_.edges()[e].u, c) && free_on(g_.edges()[e].v, c)) {
            unset_color(e);
            set_color(e, c);
            moved = true;
            break;
          }
        }
        if (!moved) emptied = false;
      }
      if (!emptied) return;
    }
  }

  void verify() const {
    for (int e = 0; e < g_.m(); ++e)
      if (col_[e] < 0) throw std::logic_error("edge_color: uncolored edge");
    for (int v = 0; v < g_.n(); ++v) {
      std::set<int> seen;
      for (auto [w, id] : g_.incident(v))
        if (!seen.insert(col_[id]).second)
          throw std::logic_error("edge_color: color clash at vertex");
    }
  }

  std::vector<std::vector<int>> classes() const {
    std::vector<std::vector<int>> out(max_c_);
    for (int e = 0; e < g_.m(); ++e)
      if (col_[e] >= 0) out[col_[e]].push_back(e);
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& c) { return c.empty(); }),
              out.end());
    return out;
  }

  const Graph& g_;
  int max_c_;
  std::vector<int> col_;
  std::vector<std::vector<int>> at_;
};

}  // namespace

std::vector<std::vector<int>> edge_color_classes(const Graph& g) {
  if (g.allows_loops()) throw std::invalid_argument("edge_color: loops unsupported");
  if (g.m() == 0) return {};
  return EdgeColorer(g).run();
}

CoveringFamily covering_family(const Graph& g) {
  if (g.allows_loops())
    throw std::invalid_argument("covering_family: loops unsupported");
  auto classes = edge_color_classes(g);
  if (classes.empty()) classes.push_back({});

  CoveringFamily fam;
  for (const auto& cls : classes) {
    Graph sub(g.n());
    PathHomomorphism hom;
    hom.position.assign(g.n(), -1);
    hom.preimage_bound = 1;
    int pos = 0;
    for (int e : cls) {
      const Edge& ed = g.edges()[e];
      sub.add_edge(ed.u, ed.v);
      hom.position[ed.u] = pos++;
      hom.position[ed.v] = pos++;
    }
    for (int v = 0; v < g.n(); ++v)
      if (hom.position[v] < 0) hom.position[v] = pos++;
    if (pos != g.n()) throw std::logic_error("covering_family: position overflow");
    fam.subgraphs.push_back(sub);
    fam.subgraphs.push_back(sub);
    fam.homs.push_back(hom);
    fam.homs.push_back(std::move(hom));
  }
  fam.d_prime = static_cast<int>(fam.subgraphs.size());

  // every edge covered exactly twice, homomorphisms injective and edge-safe
  std::vector<int> cover(g.m(), 0);
  for (size_t s = 0; s < fam.subgraphs.size(); ++s) {
    const Graph& sub = fam.subgraphs[s];
    const auto& hom = fam.homs[s];
    std::vector<char> taken(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) {
      int p = hom.position[v];
      if (p < 0 || p >= g.n() || taken[p])
        throw std::logic_error("covering_family: invalid homomorphism");
      taken[p] = 1;
    }
    for (const Edge& ed : sub.edges()) {
      if (std::abs(hom.position[ed.u] - hom.position[ed.v]) > 1)
        throw std::logic_error("covering_family: edge not mapped to path edge");
      for (int e = 0; e < g.m(); ++e)
        if (g.edges()[e] == ed) ++cover[e];
    }
  }
  for (int e = 0; e < g.m(); ++e)
    if (cover[e] != 2) throw std::logic_error("covering_family: bad edge cover count");
  return fam;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_graph(std::istream& in) {
  int n, m;
  if (!(in >> n >> m)) throw std::invalid_argument("read_graph: bad header");
  if (n < 0 || m < 0) throw std::invalid_argument("read_graph: negative header");
  Graph g(n);
  for (int i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw std::invalid_argument("read_graph: truncated edge list");
    if (u >= v) throw std::invalid_argument("read_graph: edges must satisfy u < v");
    g.add_edge(u, v);
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  write_graph(out, g);
}

}  // namespace graphsum::graphs
