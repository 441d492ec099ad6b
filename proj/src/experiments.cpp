#include "graphsum/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphsum/abelian.hpp"
#include "graphsum/graphs.hpp"
#include "graphsum/rng.hpp"
#include "graphsum/sumset.hpp"
#include "graphsum/universal.hpp"

namespace graphsum::experiments {

namespace {

constexpr const char* kToolVersion = "1.0.0";

long long require_int(const json& j, const char* key, long long lo, long long hi) {
  if (!j.is_number_integer())
    throw std::invalid_argument(std::string("config: ") + key + " must be an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi)
    throw std::invalid_argument(std::string("config: ") + key + " out of range");
  return v;
}

double require_num(const json& j, const char* key) {
  if (!j.is_number())
    throw std::invalid_argument(std::string("config: ") + key + " must be a number");
  return j.get<double>();
}

// least-squares slope of ln(y) against ln(x)
json loglog_slope(const std::vector<std::pair<long long, long long>>& pts) {
  if (pts.size() < 2) return nullptr;
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (const auto& [x, y] : pts) {
    if (x < 1 || y < 1) return nullptr;
    xs.push_back(std::log(static_cast<double>(x)));
    ys.push_back(std::log(static_cast<double>(y)));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / static_cast<double>(xs.size());
  const double my = sy / static_cast<double>(ys.size());
  double num = 0, den = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  if (den == 0) return nullptr;
  return json(num / den);
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

json run_triangle(const json& cfg) {
  const json& params = cfg.at("params");
  const uint64_t master = cfg.at("seed").get<uint64_t>();
  std::vector<long long> grid;
  for (const auto& e : params.at("m_grid")) grid.push_back(e.get<long long>());
  std::sort(grid.begin(), grid.end());
  const long long exact_cap = params.at("exact_cap").get<long long>();

  json records = json::array();
  std::vector<std::pair<long long, long long>> pts;
  for (long long m : grid) {
    sumset::Labeling lab = sumset::triangle_construction(static_cast<int>(m));
    graphs::Graph g = graphs::disjoint_triangles(static_cast<int>(m));
    const long long size = static_cast<long long>(sumset::eval_sumset(g, lab).size());
    Int need = Int(6) * m;
    Int c = 1;
    while (c * c * c < need) ++c;
    json exact = nullptr;
    if (m <= exact_cap) {
      sumset::ExactOptions opts;
      opts.cap = std::max(12, static_cast<int>(3 * m));
      exact = sumset::exact_min_sumset(g, opts).size;
    }
    json rec;
    rec["m"] = m;
    rec["edges"] = 3 * m;
    rec["constructed_size"] = size;
    rec["bound"] = int_to_json(c + 3);
    rec["exact_size"] = exact;
    rec["kind"] = "construction_upper_bound";
    rec["seed"] = master;
    records.push_back(std::move(rec));
    pts.emplace_back(m, size);
  }

  json summary;
  summary["slope"] = loglog_slope(pts);
  summary["points"] = static_cast<long long>(pts.size());

  std::string csv = csv_join({"m", "edges", "constructed_size", "bound", "exact_size",
                              "kind", "seed"});
  for (const auto& r : records)
    csv += csv_join({cell(r.at("m")), cell(r.at("edges")), cell(r.at("constructed_size")),
                     cell(r.at("bound")), cell(r.at("exact_size")), cell(r.at("kind")),
                     cell(r.at("seed"))});

  json results;
  results["schema"] = 1;
  results["experiment"] = "triangle_scaling";
  results["config"] = cfg;
  results["records"] = std::move(records);
  results["summary"] = std::move(summary);
  json out;
  out["results"] = std::move(results);
  out["csv"] = std::move(csv);
  return out;
}

abelian::AbelianGroup family_group(const std::string& name, long long n) {
  if (name == "cyclic_n") return abelian::AbelianGroup({Int(n)}, false);
  if (name == "cyclic_2n") return abelian::AbelianGroup({Int(2 * n)}, false);
  if (name == "binary") {
    int bits = 0;
    while ((1LL << bits) < n) ++bits;
    return abelian::AbelianGroup(std::vector<Int>(static_cast<size_t>(std::max(bits, 1)), 2),
                                 false);
  }
  throw std::invalid_argument("config: unknown group family " + name);
}

json run_regular(const json& cfg) {
  const json& params = cfg.at("params");
  const uint64_t master = cfg.at("seed").get<uint64_t>();
  const long long trials = cfg.at("trials").get<long long>();
  const int d = params.at("d").get<int>();
  const long long budget = params.at("budget").get<long long>();
  std::vector<long long> grid;
  for (const auto& e : params.at("n_grid")) grid.push_back(e.get<long long>());
  std::sort(grid.begin(), grid.end());
  std::vector<std::string> families;
  for (const auto& e : params.at("group_family")) families.push_back(e.get<std::string>());
  for (long long n : grid) {
    if (n <= d || (n * d) % 2 != 0)
      throw std::invalid_argument("config: no simple d-regular graph on n vertices");
  }

  json records = json::array();
  std::vector<std::pair<long long, std::vector<long long>>> mins_by_n;
  for (long long n : grid) {
    std::vector<long long> mins;
    for (long long t = 0; t < trials; ++t) {
      const uint64_t seed_t =
          derive_seed(master, static_cast<uint64_t>(n), static_cast<uint64_t>(t));
      graphs::Graph g = graphs::random_regular(static_cast<int>(n), d, derive_seed(seed_t, 1));
      json sizes;
      long long best = -1;
      for (size_t fi = 0; fi < families.size(); ++fi) {
        abelian::AbelianGroup h = family_group(families[fi], n);
        sumset::HeuristicResult res = sumset::heuristic_min_sumset(
            g, h, budget, derive_seed(seed_t, 2, static_cast<uint64_t>(fi)));
        const long long sz = static_cast<long long>(res.size);
        sizes[families[fi]] = sz;
        if (best < 0 || sz < best) best = sz;
      }
      json exact = nullptr;
      if (n <= 6 && g.m() <= 12) exact = sumset::exact_min_sumset(g).size;
      json rec;
      rec["n"] = n;
      rec["trial"] = t;
      rec["d"] = d;
      rec["sizes"] = std::move(sizes);
      rec["min_size"] = best;
      rec["exact_size"] = exact;
      rec["kind"] = "heuristic_upper_bound";
      rec["seed"] = seed_t;
      records.push_back(std::move(rec));
      mins.push_back(best);
    }
    mins_by_n.emplace_back(n, std::move(mins));
  }

  json medians = json::array();
  for (auto& [n, mins] : mins_by_n) {
    std::sort(mins.begin(), mins.end());
    const size_t k = mins.size();
    const double med = k % 2 ? static_cast<double>(mins[k / 2])
                             : (static_cast<double>(mins[k / 2 - 1]) +
                                static_cast<double>(mins[k / 2])) /
                                   2.0;
    json e;
    e["n"] = n;
    e["median_min_size"] = med;
    medians.push_back(std::move(e));
  }
  json summary;
  summary["upper_bounds_only"] = true;
  summary["median_min_size_by_n"] = std::move(medians);

  std::string csv =
      csv_join({"n", "trial", "d", "family", "size", "min_size", "exact_size", "kind", "seed"});
  for (const auto& r : records)
    for (const auto& fam : families)
      csv += csv_join({cell(r.at("n")), cell(r.at("trial")), cell(r.at("d")), fam,
                       cell(r.at("sizes").at(fam)), cell(r.at("min_size")),
                       cell(r.at("exact_size")), cell(r.at("kind")), cell(r.at("seed"))});

  json results;
  results["schema"] = 1;
  results["experiment"] = "regular_scaling";
  results["config"] = cfg;
  results["upper_bounds_only"] = true;
  results["records"] = std::move(records);
  results["summary"] = std::move(summary);
  json out;
  out["results"] = std::move(results);
  out["csv"] = std::move(csv);
  return out;
}

json run_universal(const json& cfg) {
  const json& params = cfg.at("params");
  const uint64_t master = cfg.at("seed").get<uint64_t>();
  const long long trials = cfg.at("trials").get<long long>();
  const long long n = params.at("n").get<long long>();
  const int d = params.at("d").get<int>();
  const double c = params.at("c").get<double>();
  const double b = params.at("b").get<double>();
  const double c_embed = params.at("c_embed").get<double>();
  const int max_retries = params.at("max_retries").get<int>();

  universal::UniversalGraphDescriptor desc = universal::choose_parameters(
      n, d, c, 2 * (d + 1), b, derive_seed(master, 0x64657363ULL));
  const universal::GeneratingCount count = universal::generating_set_size(desc);
  const abelian::AbelianGroup host = universal::gamma_group(desc);

  json records = json::array();
  int worst_retries = 0, worst_preimage = 0;
  for (long long t = 0; t < trials; ++t) {
    const uint64_t graph_seed = derive_seed(master, static_cast<uint64_t>(t), 1);
    const uint64_t embed_seed = derive_seed(master, static_cast<uint64_t>(t), 2);
    graphs::Graph g = graphs::random_regular(static_cast<int>(n), d, graph_seed);
    universal::Embedding emb = universal::embed(g, desc, c_embed, max_retries, embed_seed);
    std::vector<abelian::GroupElement> labels;
    labels.reserve(static_cast<size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
      labels.push_back(universal::gamma_vertex_element(desc, emb.image[static_cast<size_t>(v)]));
    sumset::Labeling lab(host, std::move(labels));
    const long long sz = static_cast<long long>(sumset::eval_sumset(g, lab).size());
    if (Int(sz) > count.exact)
      throw std::logic_error("universal_demo: sum-set exceeds the generating count");
    worst_retries = std::max(worst_retries, emb.retries_used);
    worst_preimage = std::max(worst_preimage, emb.preimage_max);
    json rec;
    rec["trial"] = t;
    rec["n"] = n;
    rec["d"] = d;
    rec["retries_used"] = emb.retries_used;
    rec["preimage_max"] = emb.preimage_max;
    rec["sumset_size"] = sz;
    rec["generating_exact"] = int_to_json(count.exact);
    rec["generating_bound"] = int_to_json(count.bound);
    rec["verified"] = true;
    rec["kind"] = "exact";
    rec["graph_seed"] = graph_seed;
    rec["embed_seed"] = embed_seed;
    records.push_back(std::move(rec));
  }

  json summary;
  summary["descriptor"] = desc.to_json();
  summary["generating_exact"] = int_to_json(count.exact);
  summary["generating_bound"] = int_to_json(count.bound);
  summary["all_verified"] = true;
  summary["max_retries_used"] = worst_retries;
  summary["max_preimage"] = worst_preimage;

  std::string csv = csv_join({"trial", "n", "d", "retries_used", "preimage_max", "sumset_size",
                              "generating_exact", "generating_bound", "verified", "kind",
                              "graph_seed", "embed_seed"});
  for (const auto& r : records)
    csv += csv_join({cell(r.at("trial")), cell(r.at("n")), cell(r.at("d")),
                     cell(r.at("retries_used")), cell(r.at("preimage_max")),
                     cell(r.at("sumset_size")), cell(r.at("generating_exact")),
                     cell(r.at("generating_bound")), cell(r.at("verified")),
                     cell(r.at("kind")), cell(r.at("graph_seed")), cell(r.at("embed_seed"))});

  json results;
  results["schema"] = 1;
  results["experiment"] = "universal_demo";
  results["config"] = cfg;
  results["records"] = std::move(records);
  results["summary"] = std::move(summary);
  json out;
  out["results"] = std::move(results);
  out["csv"] = std::move(csv);
  return out;
}

}  // namespace

json normalize_config(const json& cfg) {
  if (!cfg.is_object()) throw std::invalid_argument("config: expected a JSON object");
  if (cfg.contains("schema") && require_int(cfg.at("schema"), "schema", 1, 1) != 1)
    throw std::invalid_argument("config: unsupported schema");
  if (!cfg.contains("experiment") || !cfg.at("experiment").is_string())
    throw std::invalid_argument("config: experiment name is required");
  const std::string kind = cfg.at("experiment").get<std::string>();
  if (!cfg.contains("seed") || !cfg.at("seed").is_number_integer())
    throw std::invalid_argument("config: an explicit integer seed is required");
  const uint64_t seed = cfg.at("seed").get<uint64_t>();
  const long long trials =
      cfg.contains("trials") ? require_int(cfg.at("trials"), "trials", 1, 1000000) : 1;
  json params = cfg.contains("params") ? cfg.at("params") : json::object();
  if (!params.is_object()) throw std::invalid_argument("config: params must be an object");

  json norm;
  norm["schema"] = 1;
  norm["experiment"] = kind;
  norm["seed"] = seed;
  norm["trials"] = trials;

  json p;
  if (kind == "triangle_scaling") {
    if (!params.contains("m_grid") || !params.at("m_grid").is_array() ||
        params.at("m_grid").empty())
      throw std::invalid_argument("config: m_grid must be a nonempty array");
    for (const auto& e : params.at("m_grid")) require_int(e, "m_grid entry", 1, 100000);
    p["m_grid"] = params.at("m_grid");
    p["exact_cap"] =
        params.contains("exact_cap") ? require_int(params.at("exact_cap"), "exact_cap", 0, 8) : 2;
  } else if (kind == "regular_scaling") {
    if (!params.contains("n_grid") || !params.at("n_grid").is_array() ||
        params.at("n_grid").empty())
      throw std::invalid_argument("config: n_grid must be a nonempty array");
    for (const auto& e : params.at("n_grid")) require_int(e, "n_grid entry", 2, 100000);
    p["n_grid"] = params.at("n_grid");
    p["d"] = params.contains("d") ? require_int(params.at("d"), "d", 3, 64) : 3;
    p["budget"] =
        params.contains("budget") ? require_int(params.at("budget"), "budget", 0, 100000000) : 2000;
    if (params.contains("group_family")) {
      if (!params.at("group_family").is_array() || params.at("group_family").empty())
        throw std::invalid_argument("config: group_family must be a nonempty array");
      for (const auto& e : params.at("group_family"))
        family_group(e.get<std::string>(), 2);  // name check
      p["group_family"] = params.at("group_family");
    } else {
      p["group_family"] = json::array({"cyclic_n", "cyclic_2n", "binary"});
    }
  } else if (kind == "universal_demo") {
    p["n"] = params.contains("n") ? require_int(params.at("n"), "n", 2, 100000000) : 64;
    p["d"] = params.contains("d") ? require_int(params.at("d"), "d", 3, 64) : 3;
    p["c"] = params.contains("c") ? require_num(params.at("c"), "c") : 1.0;
    p["b"] = params.contains("b") ? require_num(params.at("b"), "b") : 8.0;
    p["c_embed"] = params.contains("c_embed") ? require_num(params.at("c_embed"), "c_embed") : 1.0;
    p["max_retries"] = params.contains("max_retries")
                           ? require_int(params.at("max_retries"), "max_retries", 1, 100000)
                           : 100;
  } else {
    throw std::invalid_argument("config: unknown experiment " + kind);
  }
  norm["params"] = std::move(p);
  return norm;
}

ExperimentOutput run_experiment(const json& cfg) {
  const json norm = normalize_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::string kind = norm.at("experiment").get<std::string>();
  json payload;
  if (kind == "triangle_scaling")
    payload = run_triangle(norm);
  else if (kind == "regular_scaling")
    payload = run_regular(norm);
  else
    payload = run_universal(norm);
  const auto stop = std::chrono::steady_clock::now();

  ExperimentOutput out;
  out.results = payload.at("results");
  out.csv = payload.at("csv").get<std::string>();
  out.manifest["schema"] = 1;
  out.manifest["tool_version"] = kToolVersion;
  out.manifest["experiment"] = kind;
  out.manifest["config"] = norm;
  out.manifest["records"] = static_cast<long long>(out.results.at("records").size());
  out.manifest["wall_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return out;
}

void write_outputs(const ExperimentOutput& out, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto dump = [&](const std::string& name, const std::string& body) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + out_dir);
    f << body;
  };
  dump("results.csv", out.csv);
  dump("results.json", out.results.dump(2) + "\n");
  dump("manifest.json", out.manifest.dump(2) + "\n");
}

}  // namespace graphsum::experiments
