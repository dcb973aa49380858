#ifndef SOUNDCONE_CONFIG_HPP
#define SOUNDCONE_CONFIG_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace soundcone {

using Json = nlohmann::ordered_json;

/// Fully materialized experiment description. Parsing fills every default,
/// so serialize(parse(x)) is the resolved form and round-trips exactly.
struct ExperimentConfig {
  Json graph;  // descriptor string or {n_sites, edges}
  double tau = 1.0;
  double U = 0.0;
  double mu = 0.0;
  int n_max = 3;

  std::string state_type = "ground";  // "ground" | "thermal"
  double beta = 1.0;
  int sector_lo = 0;
  int sector_hi = 0;
  double weight_floor = 1e-8;

  std::string channel_type = "add_boson";  // also "lazy_add", "remove_boson"
  std::vector<int> region = {0};
  double p = 1.0;                          // lazy_add only
  std::vector<double> site_probabilities;  // empty: uniform

  double t_max = 5.0;
  double dt = 0.05;

  std::string method = "dense_expm";
  double solver_tol = 1e-12;
  double leak_tol = 1.0;

  std::vector<std::string> checks = {"positivity", "dominance", "diffineq"};
  double positivity_tol = 1e-8;
  double dominance_tol = 1e-8;
  double diffineq_tol = 1e-6;
  double velocity_threshold = 1e-3;

  std::vector<double> premise_times = {0.0, 0.5, 1.0, 2.0};
  int premise_samples = 20;

  bool allow_invalid_channel = false;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
};

ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);
Json serialize_config(const ExperimentConfig& cfg);

/// Formats a double with 17 significant digits, locale independent.
std::string format_double(double v);

}  // namespace soundcone

#endif
