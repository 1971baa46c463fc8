#pragma once

#include <string>
#include <vector>

#include "tpk/config.hpp"

namespace tpk {

struct NamedConfig {
  std::string name;
  std::string note;
  RunConfig config;
};

// Built-in parameter sets, ordered from degenerate to fully mixed.
const std::vector<NamedConfig>& presetCatalog();

// Looks up a preset by name. Throws ConfigError for unknown names.
RunConfig presetConfig(const std::string& name);

}  // namespace tpk
