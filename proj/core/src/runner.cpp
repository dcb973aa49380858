#include "soundcone/runner.hpp"

#include <filesystem>
#include <fstream>

#include "soundcone/evolution.hpp"
#include "soundcone/verify.hpp"

namespace soundcone {

namespace {

ExcitationChannel channel_from_config(const ExperimentConfig& cfg) {
  if (cfg.channel_type == "add_boson")
    return add_boson_channel(cfg.region, cfg.site_probabilities);
  if (cfg.channel_type == "lazy_add")
    return lazy_add_channel(cfg.region, cfg.p, cfg.site_probabilities);
  if (cfg.channel_type == "remove_boson")
    return remove_boson_channel(cfg.region, cfg.site_probabilities);
  throw std::invalid_argument("config field 'channel.type': unknown type '" +
                              cfg.channel_type + "'");
}

Json to_json(const ChannelValidation& v) {
  return Json{{"pass", v.pass},
              {"completeness_max_dev", v.completeness_max_dev},
              {"covariance_max_dev", v.covariance_max_dev},
              {"witness_min", v.witness_min},
              {"locality_max_dev", v.locality_max_dev},
              {"failure", v.failure}};
}

}  // namespace

Graph graph_from_config(const Json& field) {
  if (field.is_string()) return parse_graph_descriptor(field.get<std::string>());
  if (field.is_object()) {
    int n = field.at("n_sites").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : field.at("edges"))
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return build_graph(n, edges);
  }
  throw std::invalid_argument(
      "config field 'graph': wants a descriptor string or {n_sites, edges}");
}

RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::string& output_dir) {
  RunResult res;
  Json& rep = res.report;
  try {
    Graph g = graph_from_config(cfg.graph);
    for (int j : cfg.region)
      if (j < 0 || j >= g.n_sites)
        throw std::invalid_argument(
            "config field 'channel.region': site out of range");

    SectorModel model(g, ModelParams{cfg.tau, cfg.U, cfg.mu, {}}, cfg.n_max);
    if (cfg.sector_hi > model.max_total_number())
      throw std::invalid_argument("config field 'state.sectors': exceeds " +
                                  std::to_string(model.max_total_number()));

    std::vector<int> sectors;
    for (int N = cfg.sector_lo; N <= cfg.sector_hi; ++N) sectors.push_back(N);
    StationaryEnsemble omega =
        cfg.state_type == "ground"
            ? ground_state(model, sectors)
            : thermal_state(model, sectors, cfg.beta, cfg.weight_floor);

    std::vector<int> occupied;
    for (const auto& s : omega.sectors) occupied.push_back(s.total_number);
    ExcitationChannel ch = channel_from_config(cfg);
    int max_shift = 0;
    for (const auto& K : ch.kraus) max_shift = std::max(max_shift, K.delta_n());
    if (omega.top_sector() + max_shift > model.max_total_number())
      throw std::invalid_argument(
          "no cutoff headroom for a particle-adding channel above sector " +
          std::to_string(omega.top_sector()));
    ChannelValidation validation = validate_channel(ch, model, occupied, 1e-10);
    rep["channel_validation"] = to_json(validation);
    auto stat = is_stationary(omega, model, 1e-9);
    rep["stationarity"] = {{"stationary", stat.stationary},
                           {"max_residual", stat.max_residual}};
    rep["state"] = {{"tag", omega.tag},
                    {"dropped_mass", omega.dropped_mass},
                    {"dropped_mass_warning", omega.dropped_mass_warning}};

    bool failed = !validation.pass;
    if (failed && !cfg.allow_invalid_channel) {
      rep["pass"] = false;
      res.exit_code = 2;
      // fall through to write the report below
    }

    bool ran_trajectory = false;
    Trajectory traj;
    Eigen::MatrixXd gamma;
    VelocityBound vb = velocity_bound(g, cfg.tau);
    double n0 = 0;
    if (validation.pass || cfg.allow_invalid_channel) {
      auto grid = uniform_grid(cfg.t_max, cfg.dt);
      SolverSettings settings{cfg.method, cfg.solver_tol, cfg.leak_tol};
      EvolvedEnsemble rho0 = apply_channel(omega, ch, model);
      traj = evolve(rho0, model, omega, grid, settings);
      ran_trajectory = true;

      Eigen::VectorXd x0 = traj.x.row(0).cwiseMax(0.0);
      gamma = comparison_trajectory(g, cfg.tau, x0, grid);
      n0 = traj.x.row(0).sum();

      auto has = [&](const std::string& c) {
        return std::find(cfg.checks.begin(), cfg.checks.end(), c) !=
               cfg.checks.end();
      };
      if (has("positivity")) {
        auto r = positivity_check(traj, cfg.positivity_tol);
        rep["positivity"] = {{"min_eig", r.min_eigs}, {"pass", r.pass}};
        failed |= !r.pass;
      }
      if (has("dominance")) {
        auto r = dominance_check(traj, gamma, cfg.dominance_tol);
        rep["dominance"] = {{"min_margin", r.min_margin}, {"pass", r.pass}};
        failed |= !r.pass;
      }
      if (has("diffineq")) {
        auto r = differential_inequality_check(traj, g, cfg.tau,
                                               cfg.diffineq_tol);
        rep["diffineq"] = {{"min_residual", r.min_residual},
                           {"fd_error_estimate", r.fd_error_estimate},
                           {"pass", r.pass}};
        failed |= !r.pass;
      }
      if (has("envelope") && n0 > 0) {
        auto r = envelope_check(traj, vb, g, cfg.region, n0);
        Json per_site = Json::array();
        for (const auto& s : r.per_site)
          per_site.push_back({{"site", s.site},
                              {"distance", s.distance},
                              {"ratio", s.ratio}});
        rep["envelope"] = {{"per_site", per_site},
                           {"empirical_c", r.empirical_c},
                           {"shell_monotone", r.shell_monotone},
                           {"skipped_sites", r.skipped_sites}};
        failed |= !r.shell_monotone;
      }
      if (has("velocity")) {
        auto r = empirical_velocity(traj, g, cfg.region,
                                    cfg.velocity_threshold);
        rep["empirical_velocity"] = {{"front_reached", r.front_reached},
                                     {"fitted_speed", r.fitted_speed},
                                     {"distances", r.distances},
                                     {"arrival_times", r.arrival_times},
                                     {"bound_v", vb.v}};
        if (r.front_reached) failed |= !(r.fitted_speed < vb.v);
      }
      if (has("premise")) {
        auto r = premise_check(ch, model, occupied, cfg.premise_times,
                               cfg.premise_samples, cfg.seed,
                               cfg.positivity_tol);
        rep["premise"] = {{"min_eig", r.min_eig},
                          {"samples", r.samples.size()},
                          {"pass", r.pass}};
        failed |= !r.pass;
      }

      Eigen::VectorXd totals = traj.x.rowwise().sum();
      double total_drift =
          (totals.array() - totals(0)).abs().maxCoeff();
      rep["conservation"] = {{"total_x_drift", total_drift},
                             {"norm_drift", traj.max_norm_drift},
                             {"energy_drift", traj.max_energy_drift}};
      rep["leakage"] = {
          {"max", *std::max_element(traj.leakage.begin(), traj.leakage.end())},
          {"warning", traj.leak_warning}};
      failed |= traj.leak_warning;
    }

    rep["velocity_bound"] = {{"tau", vb.tau},     {"Delta", vb.delta},
                             {"D", vb.max_deg},   {"chi", vb.chi},
                             {"v0", vb.v0},       {"v", vb.v},
                             {"C", vb.c_const}};
    rep["tolerances"] = {{"positivity", cfg.positivity_tol},
                         {"dominance", cfg.dominance_tol},
                         {"diffineq", cfg.diffineq_tol},
                         {"channel_validation", 1e-10}};
    rep["pass"] = !failed;
    res.exit_code = failed ? 2 : 0;

    // Artifacts.
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    {
      std::ofstream csv(fs::path(output_dir) / "trajectory.csv");
      csv << "t,site,x,gamma,envelope,leakage\n";
      if (ran_trajectory) {
        auto dist = distances_from(g, cfg.region);
        for (size_t it = 0; it < traj.times.size(); ++it)
          for (int j = 0; j < g.n_sites; ++j) {
            double env = 0;
            if (dist[j] && n0 > 0)
              env = n0 * std::exp(vb.v * traj.times[it] - *dist[j]);
            csv << format_double(traj.times[it]) << ',' << j << ','
                << format_double(traj.x(it, j)) << ','
                << format_double(gamma(it, j)) << ',' << format_double(env)
                << ',' << format_double(traj.leakage[it]) << '\n';
          }
      }
    }
    {
      std::ofstream out(fs::path(output_dir) / "report.json");
      out << rep.dump(2) << '\n';
    }
    {
      // The configured output_dir is kept as-is so that runs into
      // different directories stay byte-identical.
      std::ofstream out(fs::path(output_dir) / "config.resolved.json");
      out << serialize_config(cfg).dump(2) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    res.exit_code = 1;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.error = std::string("runtime error: ") + e.what();
  }
  return res;
}

}  // namespace soundcone
