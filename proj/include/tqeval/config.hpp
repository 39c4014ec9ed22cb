#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "tqeval/mc.hpp"

namespace tqeval {

// Minimal TOML subset: '#' comments, [section] headers, and key = value
// lines with quoted strings, numbers or booleans. Section names prefix
// their keys as "section.key". Covers the flat config files this tool
// reads; not a general TOML implementation.
std::map<std::string, std::string> parse_toml_lite(std::istream& in,
                                                   const std::string& origin);

// Tool-wide defaults, loadable from a TOML file (or the file named by the
// TQEVAL_CONFIG environment variable). Command-line flags override these.
struct ToolConfig {
  std::optional<double> scale_min;
  std::optional<double> scale_max;
  std::optional<double> confidence;
  std::optional<double> threshold;
  std::optional<std::string> history_file;

  static ToolConfig load(const std::filesystem::path& path);
};

// Simulation scenario from a .toml or .json file. Unknown keys are
// rejected by name.
SimulationScenario load_scenario(const std::filesystem::path& path);

}  // namespace tqeval
