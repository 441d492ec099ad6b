#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graphsum::graphs {

struct Edge {
  int u, v;  // u <= v
  friend bool operator==(const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v;
  }
};

// Undirected graph on vertices 0..n-1 with an indexed edge list.
// Loops are only accepted when the graph is created loop-friendly;
// they appear once in the incidence list and count once toward degree.
class Graph {
 public:
  explicit Graph(int n, bool allow_loops = false);

  void add_edge(int u, int v);
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                          bool allow_loops = false);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  bool allows_loops() const { return allow_loops_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // (neighbor, edge id) pairs in insertion order.
  const std::vector<std::pair<int, int>>& incident(int v) const;
  std::vector<int> neighbors(int v) const;
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  int max_degree() const;
  bool connected() const;
  std::vector<std::vector<int>> components() const;

 private:
  int n_ = 0;
  bool allow_loops_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> inc_;
};

Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph star(int leaves);
Graph disjoint_triangles(int count);

// Uniform simple d-regular graph via the configuration model with full
// restarts on loops or repeated pairs.
Graph random_regular(int n, int d, uint64_t seed);

std::optional<int> diameter(const Graph& g);

struct BfsTree {
  int root = 0;
  std::vector<int> parent;       // -1 for root and unreached vertices
  std::vector<int> parent_edge;  // edge id into the parent, -1 otherwise
  std::vector<int> depth;
  std::vector<int> order;        // reached vertices in visit order
};
BfsTree bfs_spanning_tree(const Graph& g, int root);

// Proper edge coloring into at most max_degree+1 matchings, returned as
// lists of edge ids.
std::vector<std::vector<int>> edge_color_classes(const Graph& g);

struct PathHomomorphism {
  std::vector<int> position;  // vertex -> position on the looped path
  int preimage_bound = 1;
};

// Matchings covering every edge exactly twice, each with a homomorphism
// onto the looped path over the full vertex set.
struct CoveringFamily {
  std::vector<Graph> subgraphs;
  std::vector<PathHomomorphism> homs;
  int d_prime = 0;
};
CoveringFamily covering_family(const Graph& g);

// Text format: header "n m", then one "u v" line per edge with u < v.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace graphsum::graphs
