#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "graphsum/experiments.hpp"

using namespace graphsum;

int main(int argc, char** argv) {
  CLI::App app{"reproducible experiment harness"};
  app.require_subcommand(1);

  std::string config_file, out_dir;
  CLI::App* run = app.add_subcommand("run", "run all trials of a configured experiment");
  run->add_option("--config", config_file, "experiment config JSON")->required();
  run->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    std::ifstream in(config_file);
    if (!in) throw std::runtime_error("cannot read config file: " + config_file);
    const json cfg = json::parse(in);
    experiments::ExperimentOutput out = experiments::run_experiment(cfg);
    experiments::write_outputs(out, out_dir);
    json status;
    status["status"] = "ok";
    status["experiment"] = out.results.at("experiment");
    status["records"] = out.results.at("records").size();
    status["out"] = out_dir;
    std::cout << status.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
