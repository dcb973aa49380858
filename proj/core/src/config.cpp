#include "soundcone/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace soundcone {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

template <typename T>
T get_or(const Json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    bad(key, "wrong type");
  }
}

const std::set<std::string> kKnownChecks = {"positivity", "dominance",
                                            "diffineq", "envelope",
                                            "velocity", "premise"};

}  // namespace

ExperimentConfig parse_config(const Json& j) {
  ExperimentConfig c;
  if (!j.contains("graph")) bad("graph", "missing");
  c.graph = j.at("graph");

  Json model = j.value("model", Json::object());
  c.tau = get_or(model, "tau", c.tau);
  c.U = get_or(model, "U", c.U);
  c.mu = get_or(model, "mu", c.mu);
  if (c.tau <= 0) bad("model.tau", "must be > 0");

  Json fock = j.value("fock", Json::object());
  c.n_max = get_or(fock, "n_max", c.n_max);
  if (c.n_max < 1) bad("fock.n_max", "must be >= 1");

  Json state = j.value("state", Json::object());
  c.state_type = get_or<std::string>(state, "type", c.state_type);
  if (c.state_type != "ground" && c.state_type != "thermal")
    bad("state.type", "must be 'ground' or 'thermal'");
  c.beta = get_or(state, "beta", c.beta);
  if (c.state_type == "thermal" && c.beta <= 0) bad("state.beta", "must be > 0");
  if (state.contains("sectors")) {
    auto s = state.at("sectors");
    if (!s.is_array() || s.size() != 2) bad("state.sectors", "wants [lo, hi]");
    c.sector_lo = s.at(0).get<int>();
    c.sector_hi = s.at(1).get<int>();
  }
  if (c.sector_lo < 0 || c.sector_hi < c.sector_lo)
    bad("state.sectors", "wants 0 <= lo <= hi");
  c.weight_floor = get_or(state, "weight_floor", c.weight_floor);

  Json channel = j.value("channel", Json::object());
  c.channel_type = get_or<std::string>(channel, "type", c.channel_type);
  c.region = get_or(channel, "region", c.region);
  if (c.region.empty()) bad("channel.region", "must be nonempty");
  c.p = get_or(channel, "p", c.p);
  c.site_probabilities =
      get_or(channel, "site_probabilities", c.site_probabilities);

  Json time = j.value("time", Json::object());
  c.t_max = get_or(time, "t_max", c.t_max);
  c.dt = get_or(time, "dt", c.dt);
  if (c.t_max <= 0) bad("time.t_max", "must be > 0");
  if (c.dt <= 0) bad("time.dt", "must be > 0");

  Json solver = j.value("solver", Json::object());
  c.method = get_or<std::string>(solver, "method", c.method);
  if (c.method != "dense_expm" && c.method != "krylov")
    bad("solver.method", "must be 'dense_expm' or 'krylov'");
  c.solver_tol = get_or(solver, "tol", c.solver_tol);
  c.leak_tol = get_or(solver, "leak_tol", c.leak_tol);

  c.checks = get_or(j, "checks", c.checks);
  for (const auto& name : c.checks)
    if (!kKnownChecks.count(name)) bad("checks", "unknown check '" + name + "'");

  Json tols = j.value("tolerances", Json::object());
  c.positivity_tol = get_or(tols, "positivity", c.positivity_tol);
  c.dominance_tol = get_or(tols, "dominance", c.dominance_tol);
  c.diffineq_tol = get_or(tols, "diffineq", c.diffineq_tol);
  c.velocity_threshold = get_or(j, "velocity_threshold", c.velocity_threshold);

  Json premise = j.value("premise", Json::object());
  c.premise_times = get_or(premise, "times", c.premise_times);
  c.premise_samples = get_or(premise, "m_samples", c.premise_samples);

  c.allow_invalid_channel =
      get_or(j, "allow_invalid_channel", c.allow_invalid_channel);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw std::invalid_argument("config parse error in " + path + ": " +
                                e.what());
  }
  return parse_config(j);
}

Json serialize_config(const ExperimentConfig& c) {
  Json j;
  j["graph"] = c.graph;
  j["model"] = {{"tau", c.tau}, {"U", c.U}, {"mu", c.mu}};
  j["fock"] = {{"n_max", c.n_max}};
  j["state"] = {{"type", c.state_type},
                {"beta", c.beta},
                {"sectors", {c.sector_lo, c.sector_hi}},
                {"weight_floor", c.weight_floor}};
  j["channel"] = {{"type", c.channel_type},
                  {"region", c.region},
                  {"p", c.p},
                  {"site_probabilities", c.site_probabilities}};
  j["time"] = {{"t_max", c.t_max}, {"dt", c.dt}};
  j["solver"] = {{"method", c.method},
                 {"tol", c.solver_tol},
                 {"leak_tol", c.leak_tol}};
  j["checks"] = c.checks;
  j["tolerances"] = {{"positivity", c.positivity_tol},
                     {"dominance", c.dominance_tol},
                     {"diffineq", c.diffineq_tol}};
  j["velocity_threshold"] = c.velocity_threshold;
  j["premise"] = {{"times", c.premise_times}, {"m_samples", c.premise_samples}};
  j["allow_invalid_channel"] = c.allow_invalid_channel;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace soundcone
