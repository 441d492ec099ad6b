#pragma once

#include "graphsum/jsonio.hpp"

#include <string>

namespace graphsum::experiments {

using graphsum::json;

// Fills defaults and validates shape; throws invalid_argument on bad input.
// Config shape: {schema: 1, experiment: <name>, seed: <u64>, trials: N,
// params: {...}} with per-experiment params documented in the README.
json normalize_config(const json& cfg);

struct ExperimentOutput {
  json results;       // results.json payload (deterministic)
  std::string csv;    // results.csv content (deterministic)
  json manifest;      // manifest.json payload (carries wall time)
};

// Runs all trials; throws if any trial fails. Everything except the
// manifest's wall_ms field is a pure function of the config.
ExperimentOutput run_experiment(const json& cfg);

// Writes results.csv, results.json, manifest.json into out_dir.
void write_outputs(const ExperimentOutput& out, const std::string& out_dir);

}  // namespace graphsum::experiments
