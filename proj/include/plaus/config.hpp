#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "plaus/model.hpp"
#include "plaus/scale.hpp"

namespace plaus {

// Runtime policy knobs: standard-of-proof thresholds and the verbal LR scale.
// Loaded from the file named by PLAUS_CONFIG (simple `key name value` lines);
// entries overlay the built-in defaults. Threshold numbers are policy
// configuration, not facts about probability.
struct Config {
  std::map<std::string, double> thresholds;  // standard name -> odds threshold
  ScaleTable scale;
};

Config default_config();

// Parses config text, overlaying `base`. On a bad line sets `error` to
// "line N: why" and returns nullopt.
std::optional<Config> parse_config(std::string_view text, const Config& base, std::string& error);

// Resolves a named standard against the config. `custom` has no configured
// threshold; it must arrive via an explicit threshold override.
std::optional<StandardOfProof> resolve_standard(StandardKind kind, const Config& config);
StandardOfProof custom_standard(double threshold_odds);

}  // namespace plaus
