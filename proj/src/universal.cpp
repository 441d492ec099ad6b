#include "graphsum/universal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "graphsum/rng.hpp"

namespace graphsum::universal {

bool CayleyExpander::contains(uint32_t g) const {
  return std::binary_search(generators.begin(), generators.end(), g);
}

namespace {

// Largest |eigenvalue| outside the constant eigenspace, exact solve.
double dense_lambda2(int p, const std::vector<uint32_t>& gens) {
  const int n = 1 << p;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v)
    for (uint32_t g : gens) a(v, static_cast<int>(static_cast<uint32_t>(v) ^ g)) += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const double top = ev(n - 1);
  if (std::abs(top - static_cast<double>(gens.size())) > 1e-6)
    throw std::logic_error("dense_lambda2: top eigenvalue is not the degree");
  return std::max(std::abs(ev(0)), n >= 2 ? std::abs(ev(n - 2)) : 0.0);
}

// Power iteration on the complement of the constant eigenspace.
double power_lambda2(int p, const std::vector<uint32_t>& gens, uint64_t seed) {
  const size_t n = size_t{1} << p;
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (double& t : x) t = rng.unit() - 0.5;
  auto deflate = [n](std::vector<double>& v) {
    double mean = 0;
    for (double t : v) mean += t;
    mean /= static_cast<double>(n);
    for (double& t : v) t -= mean;
  };
  auto norm = [](const std::vector<double>& v) {
    double s = 0;
    for (double t : v) s += t * t;
    return std::sqrt(s);
  };
  deflate(x);
  double nx = norm(x);
  if (nx < 1e-12) {
    x[0] += 1.0;
    deflate(x);
    nx = norm(x);
  }
  for (double& t : x) t /= nx;
  double lam = 0;
  for (int it = 0; it < 600; ++it) {
    for (size_t v = 0; v < n; ++v) {
      double acc = 0;
      for (uint32_t g : gens) acc += x[v ^ g];
      y[v] = acc;
    }
    deflate(y);
    const double ny = norm(y);
    if (ny < 1e-14) return 0.0;
    const double prev = lam;
    lam = ny;  // x has unit norm
    for (size_t v = 0; v < n; ++v) x[v] = y[v] / ny;
    if (it > 40 && std::abs(lam - prev) < 1e-12 * std::max(1.0, lam)) break;
  }
  return lam;
}

}  // namespace

CayleyExpander build_expander(int p, double b, uint64_t seed, int max_retries) {
  if (p < 3 || p > 14) throw std::invalid_argument("build_expander: p must be in [3, 14]");
  if (!(b > 0)) throw std::invalid_argument("build_expander: b must be positive");
  if (max_retries < 1) throw std::invalid_argument("build_expander: max_retries must be positive");
  const uint64_t n = uint64_t{1} << p;
  uint64_t want = static_cast<uint64_t>(std::ceil(b * p));
  if (want < 2) want = 2;
  if (want > n) want = n;
  const double threshold = static_cast<double>(want) / 2.0 + 1e-9;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng(derive_seed(seed, 0x65787061ULL, static_cast<uint64_t>(attempt)));
    std::set<uint32_t> gens{0};
    while (gens.size() < want)
      gens.insert(static_cast<uint32_t>(rng.below(n - 1) + 1));
    std::vector<uint32_t> gv(gens.begin(), gens.end());
    const double lam =
        n <= 4096 ? dense_lambda2(p, gv)
                  : power_lambda2(p, gv, derive_seed(seed, 0x706f77ULL,
                                                     static_cast<uint64_t>(attempt)));
    if (lam <= threshold) return CayleyExpander{p, std::move(gv), lam};
  }
  throw std::runtime_error("build_expander: no generator set passed the spectral check");
}

graphs::Graph expander_graph(const CayleyExpander& z) {
  if (z.p < 1 || z.generators.empty() || z.generators[0] != 0)
    throw std::invalid_argument("expander_graph: malformed expander");
  const long long total = 1LL << z.p;
  if (total > 4096)
    throw std::invalid_argument("expander_graph: too many vertices to materialize");
  graphs::Graph g(static_cast<int>(total), true);
  for (int u = 0; u < total; ++u)
    for (uint32_t s : z.generators) {
      const int v = static_cast<int>(static_cast<uint32_t>(u) ^ s);
      if (v >= u) g.add_edge(u, v);
    }
  return g;
}

graphs::Graph tensor_with_clique(const graphs::Graph& x, int q) {
  if (q < 1) throw std::invalid_argument("tensor_with_clique: q must be positive");
  for (int v = 0; v < x.n(); ++v)
    if (!x.has_edge(v, v))
      throw std::invalid_argument("tensor_with_clique: every vertex needs a loop");
  const long long total = static_cast<long long>(x.n()) * q;
  if (total > 4096)
    throw std::invalid_argument("tensor_with_clique: too many vertices to materialize");
  graphs::Graph g(static_cast<int>(total), true);
  for (const auto& e : x.edges()) {
    if (e.u == e.v) {
      for (int a = 0; a < q; ++a)
        for (int bb = a; bb < q; ++bb) g.add_edge(e.u * q + a, e.u * q + bb);
    } else {
      for (int a = 0; a < q; ++a)
        for (int bb = 0; bb < q; ++bb) g.add_edge(e.u * q + a, e.v * q + bb);
    }
  }
  return g;
}

UniversalGraphDescriptor choose_parameters(long long n, int d, double c, int d_prime,
                                           double b, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("choose_parameters: n must be at least 2");
  if (d < 3) throw std::invalid_argument("choose_parameters: d must be at least 3");
  if (!(c > 0)) throw std::invalid_argument("choose_parameters: c must be positive");
  if (d_prime < 2) throw std::invalid_argument("choose_parameters: d_prime must be at least 2");
  if (!(b > 0)) throw std::invalid_argument("choose_parameters: b must be positive");

  const double ln2n = std::log(static_cast<double>(n)) * std::log(static_cast<double>(n));
  const double mu = std::pow(static_cast<double>(n) / (c * d * ln2n),
                             1.0 / static_cast<double>(d_prime));

  long long best_m = -1;
  int best_p = 0, best_q = 0;
  for (int q = 1; q <= d; q += 2) {
    for (int p = 3; p <= 14; ++p) {
      const long long m = (1LL << p) * q;
      if (static_cast<double>(m) < mu) continue;
      if (best_m < 0 || m < best_m) {
        best_m = m;
        best_p = p;
        best_q = q;
      }
    }
  }
  if (best_m < 0)
    throw std::invalid_argument("choose_parameters: n exceeds the supported block window");

  const double slot_threshold = 1.1 * c * d * ln2n;
  int s = 0;
  while (static_cast<double>(1ULL << s) <= slot_threshold) {
    ++s;
    if (s > 40) throw std::invalid_argument("choose_parameters: slot space overflow");
  }

  UniversalGraphDescriptor desc;
  desc.n = n;
  desc.d = d;
  desc.c = c;
  desc.b = b;
  desc.d_prime = d_prime;
  desc.p = best_p;
  desc.q = best_q;
  desc.m = best_m;
  desc.s = s;
  desc.mu = mu;
  desc.t1 = static_cast<long long>(best_p) * d_prime + s;
  desc.t2 = d_prime;
  desc.seed = seed;
  desc.base = build_expander(best_p, b, derive_seed(seed, 0x62617365ULL));
  if (static_cast<double>(desc.m) < desc.mu)
    throw std::logic_error("choose_parameters: block group smaller than mu");
  return desc;
}

namespace {

void check_vertex(const UniversalGraphDescriptor& desc, const GammaVertex& v,
                  const char* who) {
  const size_t dp = static_cast<size_t>(desc.d_prime);
  if (v.x2.size() != dp || v.xq.size() != dp)
    throw std::invalid_argument(std::string(who) + ": wrong block count");
  for (uint32_t x : v.x2)
    if (x >> desc.p) throw std::invalid_argument(std::string(who) + ": binary block out of range");
  for (int x : v.xq)
    if (x < 0 || x >= desc.q)
      throw std::invalid_argument(std::string(who) + ": residue block out of range");
  if (desc.s < 32 && (v.slot >> desc.s))
    throw std::invalid_argument(std::string(who) + ": slot out of range");
}

}  // namespace

bool gamma_adjacent(const UniversalGraphDescriptor& desc, const GammaVertex& a,
                    const GammaVertex& b) {
  check_vertex(desc, a, "gamma_adjacent");
  check_vertex(desc, b, "gamma_adjacent");
  int hits = 0;
  for (int i = 0; i < desc.d_prime; ++i)
    if (desc.base.contains(a.x2[static_cast<size_t>(i)] ^ b.x2[static_cast<size_t>(i)]))
      ++hits;
  return hits >= 2;
}

GeneratingCount generating_set_size(const UniversalGraphDescriptor& desc) {
  auto ipow = [](Int base, int e) {
    Int r = 1;
    while (e-- > 0) r *= base;
    return r;
  };
  const Int g = Int(desc.base.r()) * desc.q;
  const Int m = desc.m;
  const Int slots = Int(1) << desc.s;
  Int exact = 0;
  for (int j = 2; j <= desc.d_prime; ++j)
    exact += binomial(desc.d_prime, j) * ipow(g, j) * ipow(m - g, desc.d_prime - j);
  exact *= slots;
  const Int bound = slots * ipow(m, desc.d_prime - 2) * g * g * binomial(desc.d_prime, 2);
  if (exact > bound)
    throw std::logic_error("generating_set_size: count exceeds its closed-form bound");
  return {exact, bound};
}

abelian::AbelianGroup gamma_group(const UniversalGraphDescriptor& desc) {
  std::vector<Int> mods(static_cast<size_t>(desc.t1), Int(2));
  if (desc.q > 1)
    for (long long i = 0; i < desc.t2; ++i) mods.push_back(desc.q);
  return abelian::AbelianGroup(std::move(mods), false);
}

abelian::GroupElement gamma_vertex_element(const UniversalGraphDescriptor& desc,
                                           const GammaVertex& v) {
  check_vertex(desc, v, "gamma_vertex_element");
  std::vector<Int> coords;
  coords.reserve(static_cast<size_t>(desc.t1 + (desc.q > 1 ? desc.t2 : 0)));
  for (int i = 0; i < desc.d_prime; ++i)
    for (int bit = 0; bit < desc.p; ++bit)
      coords.push_back((v.x2[static_cast<size_t>(i)] >> bit) & 1u);
  for (int bit = 0; bit < desc.s; ++bit) coords.push_back((v.slot >> bit) & 1u);
  if (desc.q > 1)
    for (int i = 0; i < desc.d_prime; ++i) coords.push_back(v.xq[static_cast<size_t>(i)]);
  return gamma_group(desc).element(std::move(coords));
}

Embedding embed(const graphs::Graph& g, const UniversalGraphDescriptor& desc,
                double c_embed, int max_retries, uint64_t seed) {
  if (g.allows_loops())
    for (const auto& e : g.edges())
      if (e.u == e.v) throw std::invalid_argument("embed: loops are not supported");
  if (!(c_embed > 0)) throw std::invalid_argument("embed: c_embed must be positive");
  if (max_retries < 1) throw std::invalid_argument("embed: max_retries must be positive");
  if (g.n() < 1) throw std::invalid_argument("embed: empty graph");
  if (g.n() > desc.n) throw std::invalid_argument("embed: graph larger than the target budget");
  if (g.max_degree() > desc.d)
    throw std::invalid_argument("embed: graph degree exceeds the descriptor degree");

  graphs::CoveringFamily fam = graphs::covering_family(g);
  if (fam.d_prime > desc.d_prime)
    throw std::invalid_argument("embed: covering family wider than the descriptor");
  while (fam.d_prime < desc.d_prime) {
    // pad with edgeless matchings so every descriptor block is walked
    graphs::PathHomomorphism hom;
    hom.position.resize(static_cast<size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) hom.position[static_cast<size_t>(v)] = v;
    hom.preimage_bound = 1;
    fam.subgraphs.push_back(graphs::Graph(g.n()));
    fam.homs.push_back(std::move(hom));
    ++fam.d_prime;
  }

  const double lnn = std::log(static_cast<double>(desc.n));
  long long cap = static_cast<long long>(std::ceil(1.1 * c_embed * desc.d * lnn * lnn));
  cap = std::min(cap, 1LL << desc.s);
  if (cap < 1) throw std::invalid_argument("embed: preimage cap is empty");

  {
    Int space = cap;
    for (int i = 0; i < desc.d_prime; ++i) space *= desc.m;
    if (space < g.n()) throw std::invalid_argument("embed: host too small for the graph");
  }

  const int n = g.n();
  const uint64_t block = uint64_t{1} << desc.p;
  const int r = desc.base.r();

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    // one walk per block, indexed by path position
    std::vector<std::vector<std::pair<uint32_t, int>>> walk(
        static_cast<size_t>(desc.d_prime));
    for (int i = 0; i < desc.d_prime; ++i) {
      Rng wr(derive_seed(seed, static_cast<uint64_t>(attempt), static_cast<uint64_t>(i)));
      auto& w = walk[static_cast<size_t>(i)];
      w.resize(static_cast<size_t>(n));
      uint32_t x = static_cast<uint32_t>(wr.below(block));
      int cc = static_cast<int>(wr.below(static_cast<uint64_t>(desc.q)));
      w[0] = {x, cc};
      for (int t = 1; t < n; ++t) {
        x ^= desc.base.generators[static_cast<size_t>(wr.below(static_cast<uint64_t>(r)))];
        cc = static_cast<int>(wr.below(static_cast<uint64_t>(desc.q)));
        w[static_cast<size_t>(t)] = {x, cc};
      }
    }

    std::vector<GammaVertex> image(static_cast<size_t>(n));
    std::map<std::vector<long long>, int> tuple_count;
    bool overflow = false;
    for (int v = 0; v < n && !overflow; ++v) {
      GammaVertex& gv = image[static_cast<size_t>(v)];
      gv.x2.resize(static_cast<size_t>(desc.d_prime));
      gv.xq.resize(static_cast<size_t>(desc.d_prime));
      std::vector<long long> key;
      key.reserve(static_cast<size_t>(2 * desc.d_prime));
      for (int i = 0; i < desc.d_prime; ++i) {
        const int pos = fam.homs[static_cast<size_t>(i)].position[static_cast<size_t>(v)];
        const auto& step = walk[static_cast<size_t>(i)][static_cast<size_t>(pos)];
        gv.x2[static_cast<size_t>(i)] = step.first;
        gv.xq[static_cast<size_t>(i)] = step.second;
        key.push_back(step.first);
        key.push_back(step.second);
      }
      const int rank = tuple_count[key]++;
      if (rank >= cap) {
        overflow = true;
        break;
      }
      gv.slot = static_cast<uint32_t>(rank);
    }
    if (overflow) continue;

    // verification: injectivity and edge preservation
    std::set<std::vector<long long>> seen;
    int widest = 0;
    for (int v = 0; v < n; ++v) {
      const GammaVertex& gv = image[static_cast<size_t>(v)];
      std::vector<long long> key;
      for (int i = 0; i < desc.d_prime; ++i) {
        key.push_back(gv.x2[static_cast<size_t>(i)]);
        key.push_back(gv.xq[static_cast<size_t>(i)]);
      }
      key.push_back(gv.slot);
      if (!seen.insert(key).second) throw std::logic_error("embed: images collide");
    }
    for (const auto& cnt : tuple_count) widest = std::max(widest, cnt.second);
    for (const auto& e : g.edges())
      if (!gamma_adjacent(desc, image[static_cast<size_t>(e.u)],
                          image[static_cast<size_t>(e.v)]))
        throw std::logic_error("embed: an edge image is not adjacent");

    Embedding out;
    out.image = std::move(image);
    out.retries_used = attempt;
    out.preimage_max = widest;
    return out;
  }
  throw std::runtime_error("embed: preimage cap exceeded on every attempt");
}

namespace {

std::vector<Int> element_key(const abelian::GroupElement& e) { return e.coords; }

}  // namespace

sumset::Labeling sauer_spencer_place(const graphs::Graph& g,
                                     const abelian::AbelianGroup& h,
                                     const std::vector<abelian::GroupElement>& avoid,
                                     uint64_t seed) {
  const int n = g.n();
  if (n < 1) throw std::invalid_argument("sauer_spencer_place: empty graph");
  for (const auto& e : g.edges())
    if (e.u == e.v) throw std::invalid_argument("sauer_spencer_place: loops are not supported");
  const auto order = h.order();
  if (!order || *order != n)
    throw std::invalid_argument("sauer_spencer_place: group order must equal vertex count");
  const int delta = g.max_degree();
  if (delta > 0) {
    const long long limit = (n + 2LL * delta - 1) / (2LL * delta) - 1;
    if (static_cast<long long>(avoid.size()) > limit)
      throw std::invalid_argument("sauer_spencer_place: avoid set too large for the bound");
  }
  std::set<std::vector<Int>> bad;
  for (const auto& a : avoid) {
    h.check_element(a);
    bad.insert(element_key(a));
  }

  const std::vector<abelian::GroupElement> elems = h.enumerate_elements();
  if (static_cast<long long>(elems.size()) != n)
    throw std::logic_error("sauer_spencer_place: enumeration size mismatch");

  auto edge_ok = [&](const abelian::GroupElement& x, const abelian::GroupElement& y) {
    return bad.find(element_key(h.add(x, y))) == bad.end();
  };
  auto violations = [&](const std::vector<int>& assign) {
    int c = 0;
    for (const auto& e : g.edges())
      if (!edge_ok(elems[static_cast<size_t>(assign[static_cast<size_t>(e.u)])],
                   elems[static_cast<size_t>(assign[static_cast<size_t>(e.v)])]))
        ++c;
    return c;
  };
  auto finish = [&](const std::vector<int>& assign) {
    if (violations(assign) != 0)
      throw std::logic_error("sauer_spencer_place: verification failed");
    std::vector<abelian::GroupElement> labels;
    labels.reserve(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) labels.push_back(elems[static_cast<size_t>(assign[static_cast<size_t>(v)])]);
    return sumset::Labeling(h, std::move(labels));
  };

  Rng rng(derive_seed(seed, 0x73617565ULL));
  std::vector<int> assign(static_cast<size_t>(n));
  for (int restart = 0; restart < 10; ++restart) {
    for (int v = 0; v < n; ++v) assign[static_cast<size_t>(v)] = v;
    rng.shuffle(assign);
    int cur = violations(assign);
    const int budget = 200 * n + 50 * g.m();
    for (int it = 0; it < budget && cur > 0; ++it) {
      // pick an endpoint of some violated edge and try a swap
      int vx = -1;
      for (const auto& e : g.edges()) {
        if (!edge_ok(elems[static_cast<size_t>(assign[static_cast<size_t>(e.u)])],
                     elems[static_cast<size_t>(assign[static_cast<size_t>(e.v)])])) {
          vx = rng.chance(0.5) ? e.u : e.v;
          break;
        }
      }
      if (vx < 0) break;
      int w = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
      if (w == vx) continue;
      std::swap(assign[static_cast<size_t>(vx)], assign[static_cast<size_t>(w)]);
      const int next = violations(assign);
      if (next < cur || (next == cur && rng.chance(0.3))) {
        cur = next;
      } else {
        std::swap(assign[static_cast<size_t>(vx)], assign[static_cast<size_t>(w)]);
      }
    }
    if (cur == 0) return finish(assign);
  }

  if (n <= 16) {
    // exhaustive backtracking, vertices in degree-descending order
    std::vector<int> verts(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) verts[static_cast<size_t>(v)] = v;
    std::stable_sort(verts.begin(), verts.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    std::vector<int> pick(static_cast<size_t>(n), -1);
    std::vector<char> used(static_cast<size_t>(n), 0);
    auto dfs = [&](auto&& self, size_t i) -> bool {
      if (i == verts.size()) return true;
      const int v = verts[i];
      for (int e = 0; e < n; ++e) {
        if (used[static_cast<size_t>(e)]) continue;
        bool ok = true;
        for (const auto& [nb, eid] : g.incident(v)) {
          (void)eid;
          if (pick[static_cast<size_t>(nb)] >= 0 &&
              !edge_ok(elems[static_cast<size_t>(e)],
                       elems[static_cast<size_t>(pick[static_cast<size_t>(nb)])])) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        pick[static_cast<size_t>(v)] = e;
        used[static_cast<size_t>(e)] = 1;
        if (self(self, i + 1)) return true;
        pick[static_cast<size_t>(v)] = -1;
        used[static_cast<size_t>(e)] = 0;
      }
      return false;
    };
    if (dfs(dfs, 0)) return finish(pick);
    throw std::runtime_error("sauer_spencer_place: no placement exists for this input");
  }
  throw std::runtime_error("sauer_spencer_place: search budget exhausted");
}

json UniversalGraphDescriptor::to_json() const {
  json j;
  j["n"] = n;
  j["d"] = d;
  j["c"] = c;
  j["b"] = b;
  j["d_prime"] = d_prime;
  j["p"] = p;
  j["q"] = q;
  j["m"] = m;
  j["s"] = s;
  j["mu"] = mu;
  j["t1"] = t1;
  j["t2"] = t2;
  j["r"] = base.r();
  j["lambda_bound"] = base.lambda_bound;
  j["generators"] = base.generators;
  j["seed"] = seed;
  return j;
}

UniversalGraphDescriptor UniversalGraphDescriptor::from_json(const json& j) {
  UniversalGraphDescriptor d;
  d.n = j.at("n").get<long long>();
  d.d = j.at("d").get<int>();
  d.c = j.at("c").get<double>();
  d.b = j.at("b").get<double>();
  d.d_prime = j.at("d_prime").get<int>();
  d.p = j.at("p").get<int>();
  d.q = j.at("q").get<int>();
  d.m = j.at("m").get<long long>();
  d.s = j.at("s").get<int>();
  d.mu = j.at("mu").get<double>();
  d.t1 = j.at("t1").get<long long>();
  d.t2 = j.at("t2").get<long long>();
  d.seed = j.at("seed").get<uint64_t>();
  d.base.p = d.p;
  d.base.generators = j.at("generators").get<std::vector<uint32_t>>();
  d.base.lambda_bound = j.at("lambda_bound").get<double>();
  if (d.p < 3 || d.p > 14 || d.q < 1 || d.q % 2 == 0 || d.s < 0)
    throw std::invalid_argument("descriptor: parameters out of range");
  if (d.m != (1LL << d.p) * d.q) throw std::invalid_argument("descriptor: m != 2^p * q");
  if (d.t1 != static_cast<long long>(d.p) * d.d_prime + d.s || d.t2 != d.d_prime)
    throw std::invalid_argument("descriptor: coordinate counts are inconsistent");
  if (d.base.generators.empty() || d.base.generators[0] != 0 ||
      !std::is_sorted(d.base.generators.begin(), d.base.generators.end()) ||
      std::adjacent_find(d.base.generators.begin(), d.base.generators.end()) !=
          d.base.generators.end())
    throw std::invalid_argument("descriptor: malformed generator list");
  for (uint32_t g : d.base.generators)
    if (g >> d.p) throw std::invalid_argument("descriptor: generator out of range");
  if (j.at("r").get<int>() != d.base.r())
    throw std::invalid_argument("descriptor: r does not match the generator list");
  return d;
}

}  // namespace graphsum::universal
