#pragma once

#include "graphsum/abelian.hpp"
#include "graphsum/graphs.hpp"
#include "graphsum/jsonio.hpp"
#include "graphsum/sumset.hpp"

#include <cstdint>
#include <vector>

namespace graphsum::universal {

using graphsum::Int;
using graphsum::json;

// Cayley graph on Z_2^p whose generator set contains 0 (so every vertex
// loops) and whose nontrivial spectrum is verified against degree/2.
struct CayleyExpander {
  int p = 0;
  std::vector<uint32_t> generators;  // sorted, first entry 0
  double lambda_bound = 0;           // verified bound on |lambda_2|

  int r() const { return static_cast<int>(generators.size()); }
  bool contains(uint32_t g) const;
};

// Samples generator sets of size ceil(b*p) (capped at the group order)
// until the spectral check passes: dense solve for 2^p <= 4096, power
// iteration with deflation beyond.
CayleyExpander build_expander(int p, double b, uint64_t seed, int max_retries = 64);

// The expander as an explicit looped graph (small p only).
graphs::Graph expander_graph(const CayleyExpander& z);
// Direct product with the looped complete graph on q vertices; the input
// must carry a loop at every vertex. Vertex (x, c) is numbered x*q + c.
graphs::Graph tensor_with_clique(const graphs::Graph& x, int q);

struct UniversalGraphDescriptor {
  long long n = 0;  // target vertex budget
  int d = 0;        // max degree the host absorbs
  double c = 1;
  double b = 8;
  int d_prime = 0;  // covering family width
  int p = 0;
  int q = 1;
  long long m = 0;  // 2^p * q
  int s = 0;        // slot bits
  double mu = 0;
  long long t1 = 0, t2 = 0;
  uint64_t seed = 0;
  CayleyExpander base;

  json to_json() const;
  static UniversalGraphDescriptor from_json(const json& j);
};

// Picks m = 2^p * q (q odd and at most d, p in [3,14]) as the least value
// at least mu = (n / (c d ln^2 n))^(1/d_prime), sizes the slot space, and
// builds the base expander.
UniversalGraphDescriptor choose_parameters(long long n, int d, double c, int d_prime,
                                           double b, uint64_t seed);

// Vertex of the host graph: d_prime blocks over Z_2^p x Z_q plus a slot.
struct GammaVertex {
  std::vector<uint32_t> x2;
  std::vector<int> xq;
  uint32_t slot = 0;
};

// Adjacent when at least two blocks differ by a base generator in their
// binary part; residues and slots are unconstrained.
bool gamma_adjacent(const UniversalGraphDescriptor& desc, const GammaVertex& a,
                    const GammaVertex& b);

struct GeneratingCount {
  Int exact;
  Int bound;  // closed form 2^s * m^(d'-2) * (rq)^2 * C(d',2)
};
GeneratingCount generating_set_size(const UniversalGraphDescriptor& desc);

// The host's vertex group Z_2^t1 x Z_q^t2 (the residue block disappears
// when q = 1) and the coordinates of a vertex in it.
abelian::AbelianGroup gamma_group(const UniversalGraphDescriptor& desc);
abelian::GroupElement gamma_vertex_element(const UniversalGraphDescriptor& desc,
                                           const GammaVertex& v);

struct Embedding {
  std::vector<GammaVertex> image;
  int retries_used = 0;
  int preimage_max = 0;
};

// Random-walk embedding: one walk per covering subgraph indexed by path
// position, slot assignment within each collision class, full adjacency
// verification. Retries with fresh walks when a tuple class overflows
// min(2^s, ceil(1.1 c_embed d ln^2 n)).
Embedding embed(const graphs::Graph& g, const UniversalGraphDescriptor& desc,
                double c_embed, int max_retries, uint64_t seed);

// Bijection [n] -> h avoiding every edge sum in `avoid`, for
// |avoid| <= ceil(n / (2 max_degree)) - 1: randomized greedy with pair-swap
// repair, exhaustive backtracking fallback at small n.
sumset::Labeling sauer_spencer_place(const graphs::Graph& g,
                                     const abelian::AbelianGroup& h,
                                     const std::vector<abelian::GroupElement>& avoid,
                                     uint64_t seed);

}  // namespace graphsum::universal
