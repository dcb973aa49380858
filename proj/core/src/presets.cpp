#include "soundcone/presets.hpp"

#include <stdexcept>

namespace soundcone {

namespace {

Json preset_json(const std::string& name) {
  if (name == "lemma1-path4") {
    // Covariance-ordering suite on a four-site chain, thermal reference.
    // Addition is spread over the whole lattice: that is the regime where
    // C(rho(0)) >= C(omega) actually holds for a state with hopping
    // coherences; a strictly local addition breaks the ordering already
    // at t = 0 through the cross terms to sites outside the region.
    return Json{
        {"graph", "path:4"},
        {"model", {{"tau", 1.0}, {"U", 1.0}}},
        {"fock", {{"n_max", 3}}},
        {"state",
         {{"type", "thermal"}, {"beta", 1.0}, {"sectors", {0, 2}}}},
        {"channel", {{"type", "add_boson"}, {"region", {0, 1, 2, 3}}}},
        {"time", {{"t_max", 5.0}, {"dt", 0.05}}},
        {"checks", {"positivity", "dominance", "diffineq"}},
    };
  }
  if (name == "freeboson-line") {
    // Single free particle on a line; dynamics has a closed-form oracle.
    return Json{
        {"graph", "path:6"},
        {"model", {{"tau", 1.0}, {"U", 0.0}}},
        {"fock", {{"n_max", 3}}},
        {"state", {{"type", "ground"}, {"sectors", {0, 0}}}},
        {"channel", {{"type", "add_boson"}, {"region", {0}}}},
        {"time", {{"t_max", 4.0}, {"dt", 0.05}}},
        {"checks",
         {"positivity", "dominance", "diffineq", "envelope", "velocity"}},
    };
  }
  if (name == "premise-2site") {
    // Operator-inequality check on the smallest interacting instance.
    return Json{
        {"graph", "path:2"},
        {"model", {{"tau", 1.0}, {"U", 1.0}}},
        {"fock", {{"n_max", 2}}},
        {"state",
         {{"type", "thermal"}, {"beta", 1.0}, {"sectors", {0, 1}}}},
        {"channel", {{"type", "add_boson"}, {"region", {0}}}},
        {"time", {{"t_max", 2.0}, {"dt", 0.05}}},
        {"checks", {"premise"}},
        {"premise", {{"times", {0.0, 0.5, 1.0, 2.0}}, {"m_samples", 20}}},
        {"seed", 7},
    };
  }
  if (name == "lightcone-cycle6") {
    // One boson dropped on the empty lattice: localized front, ballistic
    // spreading, exponential tails outside the cone.
    return Json{
        {"graph", "cycle:6"},
        {"model", {{"tau", 1.0}, {"U", 1.0}}},
        {"fock", {{"n_max", 3}}},
        {"state", {{"type", "ground"}, {"sectors", {0, 0}}}},
        {"channel", {{"type", "add_boson"}, {"region", {0}}}},
        {"time", {{"t_max", 5.0}, {"dt", 0.05}}},
        {"checks",
         {"positivity", "dominance", "diffineq", "envelope", "velocity"}},
    };
  }
  if (name == "negative-removal") {
    // Expected failure: particle removal has a negative witness and breaks
    // the covariance ordering at t = 0. The run exits with code 2.
    return Json{
        {"graph", "path:4"},
        {"model", {{"tau", 1.0}, {"U", 1.0}}},
        {"fock", {{"n_max", 3}}},
        {"state",
         {{"type", "thermal"}, {"beta", 1.0}, {"sectors", {0, 2}}}},
        {"channel", {{"type", "remove_boson"}, {"region", {0}}}},
        {"time", {{"t_max", 1.0}, {"dt", 0.05}}},
        {"checks", {"positivity"}},
        {"allow_invalid_channel", true},
    };
  }
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"lemma1-path4", "freeboson-line", "premise-2site",
          "lightcone-cycle6", "negative-removal"};
}

bool has_preset(const std::string& name) {
  for (const auto& n : preset_names())
    if (n == name) return true;
  return false;
}

ExperimentConfig preset_config(const std::string& name) {
  return parse_config(preset_json(name));
}

}  // namespace soundcone
