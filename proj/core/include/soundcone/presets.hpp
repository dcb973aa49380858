#ifndef SOUNDCONE_PRESETS_HPP
#define SOUNDCONE_PRESETS_HPP

#include <string>
#include <vector>

#include "soundcone/config.hpp"

namespace soundcone {

std::vector<std::string> preset_names();
bool has_preset(const std::string& name);
ExperimentConfig preset_config(const std::string& name);

}  // namespace soundcone

#endif
