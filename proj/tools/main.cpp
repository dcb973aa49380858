#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "soundcone/presets.hpp"
#include "soundcone/runner.hpp"

namespace {

using namespace soundcone;

int cmd_run(const std::string& config_path, const std::string& out_override,
            bool json_out) {
  ExperimentConfig cfg;
  try {
    if (has_preset(config_path))
      cfg = preset_config(config_path);
    else
      cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string out = out_override.empty() ? cfg.output_dir : out_override;
  RunResult res = run_experiment(cfg, out);
  if (res.exit_code == 1) {
    std::cerr << "error: " << res.error << "\n";
    return 1;
  }
  if (json_out)
    std::cout << res.report.dump(2) << "\n";
  else
    std::cout << (res.exit_code == 0 ? "PASS" : "FAIL")
              << " (artifacts in " << out << ")\n";
  return res.exit_code;
}

int cmd_bound(const std::string& desc, double tau, bool json_out) {
  Graph g;
  VelocityBound vb;
  try {
    g = parse_graph_descriptor(desc);
    vb = velocity_bound(g, tau);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (json_out) {
    Json j{{"graph", desc}, {"tau", vb.tau}, {"Delta", vb.delta},
           {"D", vb.max_deg}, {"chi", vb.chi}, {"v0", vb.v0},
           {"v", vb.v},       {"C", vb.c_const}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "graph  " << desc << "  (n = " << g.n_sites << ")\n"
              << "tau    " << format_double(vb.tau) << "\n"
              << "chi    " << format_double(vb.chi) << "\n"
              << "Delta  " << format_double(vb.delta) << "\n"
              << "D      " << vb.max_deg << "\n"
              << "v0     " << format_double(vb.v0) << "\n"
              << "v      " << format_double(vb.v) << "\n"
              << "C      " << format_double(vb.c_const) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));

  CLI::App app{"Lattice-boson sound-cone simulator and verifier"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool json_out = false;
  auto* run = app.add_subcommand("run", "Run an experiment config or preset");
  run->add_option("--config", config_path, "Config file path or preset name")
      ->required();
  run->add_option("--out", out_dir, "Output directory override");
  run->add_flag("--json", json_out, "Print the report as JSON");

  auto* presets = app.add_subcommand("presets", "List or show shipped presets");
  std::string preset_verb, preset_name;
  presets->add_option("verb", preset_verb, "list | show")->required();
  presets->add_option("name", preset_name, "Preset name (for show)");

  std::string graph_desc;
  double tau = 1.0;
  bool bound_json = false;
  auto* bound = app.add_subcommand("bound", "Print the velocity bound table");
  bound->add_option("--graph", graph_desc, "Graph descriptor, e.g. cycle:6")
      ->required();
  bound->add_option("--tau", tau, "Hopping rate")->default_val(1.0);
  bound->add_flag("--json", bound_json, "Print as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run->parsed()) return cmd_run(config_path, out_dir, json_out);
  if (bound->parsed()) return cmd_bound(graph_desc, tau, bound_json);
  if (presets->parsed()) {
    if (preset_verb == "list") {
      for (const auto& n : preset_names()) std::cout << n << "\n";
      return 0;
    }
    if (preset_verb == "show") {
      if (!has_preset(preset_name)) {
        std::cerr << "error: unknown preset: " << preset_name << "\n";
        return 1;
      }
      std::cout << serialize_config(preset_config(preset_name)).dump(2) << "\n";
      return 0;
    }
    std::cerr << "error: presets wants 'list' or 'show <name>'\n";
    return 1;
  }
  return 1;
}
