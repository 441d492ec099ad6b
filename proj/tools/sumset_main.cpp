#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphsum/abelian.hpp"
#include "graphsum/graphs.hpp"
#include "graphsum/jsonio.hpp"
#include "graphsum/sumset.hpp"

using namespace graphsum;

namespace {

json elements_to_json(const std::vector<abelian::GroupElement>& elems) {
  json a = json::array();
  for (const auto& e : elems) a.push_back(ints_to_json(e.coords));
  return a;
}

json labeling_to_json(const sumset::Labeling& l, int n) {
  json a = json::array();
  for (int v = 0; v < n; ++v) a.push_back(ints_to_json(l.at(v).coords));
  return a;
}

// Groups load in canonical form; positional coordinates of the presented
// moduli are remapped through the projection.
sumset::Labeling read_labeling_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read labeling file: " + path);
  json j = json::parse(in);
  auto [h, pi] = abelian::canonical_presentation(ints_from_json(j.at("group")));
  std::vector<abelian::GroupElement> labels;
  for (const auto& row : j.at("labels")) labels.push_back(pi.apply(ints_from_json(row)));
  return sumset::Labeling(std::move(h), std::move(labels));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_exact(const std::string& graph_file, int cap) {
  graphs::Graph g = graphs::read_graph_file(graph_file);
  sumset::ExactOptions opts;
  opts.cap = cap;
  sumset::ExactResult res = sumset::exact_min_sumset(g, opts);
  json out;
  out["size"] = res.size;
  out["group_moduli"] = ints_to_json(res.group.moduli());
  out["labeling"] = labeling_to_json(res.labeling, g.n());
  json wit;
  wit["sums"] = elements_to_json(sumset::eval_sumset(g, res.labeling));
  out["witnesses"] = std::move(wit);
  json meta;
  meta["kind"] = "exact";
  meta["cap"] = cap;
  meta["virtual_edges"] = res.virtual_edges;
  meta["d_prime"] = nullptr;
  out["metadata"] = std::move(meta);
  emit(out);
  return 0;
}

int run_heur(const std::string& graph_file, const std::string& group_text, long long budget,
             uint64_t seed) {
  graphs::Graph g = graphs::read_graph_file(graph_file);
  abelian::AbelianGroup h = abelian::canonical_presentation(
                                ints_from_json(json::parse(group_text)))
                                .first;
  sumset::HeuristicResult res = sumset::heuristic_min_sumset(g, h, budget, seed);
  json out;
  out["size"] = res.size;
  out["group_moduli"] = ints_to_json(h.moduli());
  out["labeling"] = labeling_to_json(res.labeling, g.n());
  json wit;
  wit["sums"] = elements_to_json(sumset::eval_sumset(g, res.labeling));
  out["witnesses"] = std::move(wit);
  json meta;
  meta["kind"] = "heuristic_upper_bound";
  meta["seed"] = seed;
  meta["budget"] = budget;
  meta["virtual_edges"] = 0;
  meta["d_prime"] = nullptr;
  out["metadata"] = std::move(meta);
  emit(out);
  return 0;
}

int run_reduce(const std::string& graph_file, const std::string& labeling_file) {
  graphs::Graph g = graphs::read_graph_file(graph_file);
  sumset::Labeling lab = read_labeling_file(labeling_file);
  auto diam = graphs::diameter(g);
  if (!diam) throw std::invalid_argument("reduce: the graph must be connected");
  const int big_d = *diam + 1;
  sumset::CanonicalReduction red = sumset::canonical_reduction(g, lab, big_d);
  const auto reduced_sums = sumset::eval_sumset(g, red.labeling);
  const auto input_sums = sumset::eval_sumset(g, lab);
  json out;
  out["size"] = reduced_sums.size();
  out["group_moduli"] = ints_to_json(red.group.moduli());
  out["labeling"] = labeling_to_json(red.labeling, g.n());
  json wit;
  wit["sums"] = elements_to_json(reduced_sums);
  json rel = json::array();
  for (const auto& f : red.relations) rel.push_back(ints_to_json(f.entries()));
  wit["relations"] = std::move(rel);
  wit["basis_images"] = elements_to_json(red.basis_images);
  out["witnesses"] = std::move(wit);
  json meta;
  meta["kind"] = "reduction";
  meta["k"] = red.k;
  meta["input_size"] = input_sums.size();
  meta["big_d"] = big_d;
  meta["virtual_edges"] = 0;
  meta["d_prime"] = nullptr;
  out["metadata"] = std::move(meta);
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum sum-sets of graphs over abelian groups"};
  app.require_subcommand(1);

  std::string graph_file, group_text, labeling_file;
  int cap = 12;
  long long budget = 0;
  uint64_t seed = 0;

  CLI::App* exact = app.add_subcommand("exact", "exact minimum with witness");
  exact->add_option("--graph", graph_file, "graph file (n m header, u v lines)")->required();
  exact->add_option("--cap", cap, "edge-count cap for the search");

  CLI::App* heur = app.add_subcommand("heur", "annealing upper bound over a fixed group");
  heur->add_option("--graph", graph_file, "graph file")->required();
  heur->add_option("--group", group_text, "group moduli as a JSON array, e.g. [2,6]")
      ->required();
  heur->add_option("--budget", budget, "annealing step budget")->required();
  heur->add_option("--seed", seed, "random seed")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "canonical quotient-group reduction");
  reduce->add_option("--graph", graph_file, "graph file (connected)")->required();
  reduce->add_option("--labeling", labeling_file,
                     "labeling file: {\"group\": [...], \"labels\": [[...], ...]}")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (exact->parsed()) return run_exact(graph_file, cap);
    if (heur->parsed()) return run_heur(graph_file, group_text, budget, seed);
    return run_reduce(graph_file, labeling_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
