#ifndef SOUNDCONE_RUNNER_HPP
#define SOUNDCONE_RUNNER_HPP

#include <string>

#include "soundcone/config.hpp"
#include "soundcone/graph.hpp"

namespace soundcone {

/// Exit-code contract: 0 all requested checks pass, 1 configuration or
/// runtime error, 2 check failure.
struct RunResult {
  int exit_code = 1;
  Json report;
  std::string error;
};

Graph graph_from_config(const Json& graph_field);

/// Executes one experiment and writes trajectory.csv, report.json and
/// config.resolved.json into output_dir. Byte-deterministic given the
/// config and seed.
RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::string& output_dir);

}  // namespace soundcone

#endif
