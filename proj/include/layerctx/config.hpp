#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "layerctx/controller.hpp"
#include "layerctx/manager.hpp"
#include "layerctx/simulation.hpp"

namespace layerctx {

// Rule described by layer names; resolved against a runtime when a case
// study is assembled. `op` is ">" (rises above) or "<" (falls below).
struct RuleSpec {
  std::string name;
  std::string metric = "bandwidth";
  std::string op = ">";
  double threshold = 0;
  std::vector<std::string> activate;
  std::vector<std::string> deactivate;
};

struct ConstraintSpec {
  std::vector<std::pair<std::string, std::string>> excludes;
  std::vector<std::pair<std::string, std::string>> dependencies;  // a requires b
};

// Full application configuration; defaults reproduce the bandwidth-adaptive
// case study.
struct AppConfig {
  SimulationConfig simulation;
  bool controller_enabled = true;
  PiController::Config controller;
  std::vector<SetpointEntry> setpoints{
      {0.0, 7.5e6}, {400.0, 9.0e6}, {600.0, 5.0e6}};
  std::vector<RuleSpec> rules;
  ConstraintSpec constraints{{{"high_band", "low_band"}}, {}};
};

// Parses JSON text; unknown keys and malformed values raise ConfigError with
// the dotted field path. Absent keys keep their defaults.
AppConfig parse_app_config(const std::string& json_text);

// Reads a config file. A run manifest (object with a "config" key) is
// unwrapped so a manifest reproduces its run byte for byte.
AppConfig load_app_config(const std::string& path);

std::string app_config_to_json(const AppConfig& cfg);
std::string manifest_json(const AppConfig& cfg, std::string_view subcommand);

}  // namespace layerctx
