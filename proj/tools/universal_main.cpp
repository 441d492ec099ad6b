#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphsum/abelian.hpp"
#include "graphsum/graphs.hpp"
#include "graphsum/jsonio.hpp"
#include "graphsum/sumset.hpp"
#include "graphsum/universal.hpp"

using namespace graphsum;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  return json::parse(in);
}

int run_build(long long n, int d, double c, double b, uint64_t seed, const std::string& out) {
  universal::UniversalGraphDescriptor desc =
      universal::choose_parameters(n, d, c, 2 * (d + 1), b, seed);
  const json j = desc.to_json();
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write descriptor file: " + out);
    f << j.dump(2) << "\n";
  }
  emit(j);
  return 0;
}

int run_embed(const std::string& desc_file, const std::string& graph_file, double c_embed,
              int retries, uint64_t seed) {
  universal::UniversalGraphDescriptor desc =
      universal::UniversalGraphDescriptor::from_json(read_json_file(desc_file));
  graphs::Graph g = graphs::read_graph_file(graph_file);
  universal::Embedding emb = universal::embed(g, desc, c_embed, retries, seed);

  const abelian::AbelianGroup host = universal::gamma_group(desc);
  std::vector<abelian::GroupElement> labels;
  labels.reserve(static_cast<size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v)
    labels.push_back(universal::gamma_vertex_element(desc, emb.image[static_cast<size_t>(v)]));
  sumset::Labeling lab(host, std::move(labels));
  const size_t sumset_size = sumset::eval_sumset(g, lab).size();
  const universal::GeneratingCount count = universal::generating_set_size(desc);
  if (Int(sumset_size) > count.exact)
    throw std::logic_error("embed: sum-set exceeds the generating count");

  json out;
  out["n"] = g.n();
  out["d_prime"] = desc.d_prime;
  out["retries_used"] = emb.retries_used;
  out["preimage_max"] = emb.preimage_max;
  json image = json::array();
  for (const auto& gv : emb.image) {
    json t;
    t["x2"] = gv.x2;
    t["xq"] = gv.xq;
    t["slot"] = gv.slot;
    image.push_back(std::move(t));
  }
  out["image"] = std::move(image);
  out["group_moduli"] = ints_to_json(host.moduli());
  out["sumset_size"] = sumset_size;
  out["generating_exact"] = int_to_json(count.exact);
  out["generating_bound"] = int_to_json(count.bound);
  json meta;
  meta["kind"] = "embedding";
  meta["seed"] = seed;
  meta["c_embed"] = c_embed;
  out["metadata"] = std::move(meta);
  emit(out);
  return 0;
}

int run_place(const std::string& group_text, const std::string& graph_file,
              const std::string& avoid_file, uint64_t seed) {
  graphs::Graph g = graphs::read_graph_file(graph_file);
  // canonical on load; avoid rows are coordinates of the presented moduli
  auto [h, pi] = abelian::canonical_presentation(ints_from_json(json::parse(group_text)));
  std::vector<abelian::GroupElement> avoid;
  for (const auto& row : read_json_file(avoid_file))
    avoid.push_back(pi.apply(ints_from_json(row)));
  sumset::Labeling lab = universal::sauer_spencer_place(g, h, avoid, seed);
  json out;
  out["size"] = sumset::eval_sumset(g, lab).size();
  out["group_moduli"] = ints_to_json(h.moduli());
  json labeling = json::array();
  for (int v = 0; v < g.n(); ++v) labeling.push_back(ints_to_json(lab.at(v).coords));
  out["labeling"] = std::move(labeling);
  json meta;
  meta["kind"] = "placement";
  meta["avoid_size"] = avoid.size();
  meta["seed"] = seed;
  out["metadata"] = std::move(meta);
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal host graphs: expanders, embeddings, placements"};
  app.require_subcommand(1);

  long long n = 0;
  int d = 0, retries = 100;
  double c = 1.0, b = 8.0, c_embed = 1.0;
  uint64_t seed = 0;
  std::string out_file, desc_file, graph_file, group_text, avoid_file;

  CLI::App* build = app.add_subcommand("build", "derive parameters and a verified expander");
  build->add_option("--n", n, "target vertex budget")->required();
  build->add_option("--d", d, "maximum degree")->required();
  build->add_option("--c", c, "construction constant")->required();
  build->add_option("--b", b, "generator density (r = ceil(b*p))");
  build->add_option("--seed", seed, "random seed")->required();
  build->add_option("--out", out_file, "descriptor output file")->required();

  CLI::App* embed = app.add_subcommand("embed", "random-walk embedding into the host");
  embed->add_option("--desc", desc_file, "descriptor file from build")->required();
  embed->add_option("--graph", graph_file, "graph file")->required();
  embed->add_option("--seed", seed, "random seed")->required();
  embed->add_option("--c-embed", c_embed, "preimage cap constant");
  embed->add_option("--retries", retries, "restart budget");

  CLI::App* place = app.add_subcommand("place", "bijection avoiding forbidden edge sums");
  place->add_option("--group", group_text, "group moduli as a JSON array")->required();
  place->add_option("--graph", graph_file, "graph file")->required();
  place->add_option("--avoid", avoid_file, "JSON array of forbidden sums (coordinate rows)")
      ->required();
  place->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (build->parsed()) return run_build(n, d, c, b, seed, out_file);
    if (embed->parsed()) return run_embed(desc_file, graph_file, c_embed, retries, seed);
    return run_place(group_text, graph_file, avoid_file, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
