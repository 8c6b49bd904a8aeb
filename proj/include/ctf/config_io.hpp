// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration files and presets.
//
// Configuration is flat `key = value` text with dotted keys; `#` starts a
// comment. Keys:
//
//   base_year, base_training_compute, base_share
//   years = 2024..2028
//   share.<year> = 0.40
//   growth.rates = 6.3:0.25, 3.4:0.75      (multiplier:weight pairs)
//   growth.noise_sd, growth.noise_mode = per_year | per_trial
//   lms.shape = lognormal | uniform, lms.lo, lms.hi
//   lms.pin.<year> = 3.8e25 | none
//   k.range = 0.9, 1.1, k.mode = per_trial | per_year
//   bins, thresholds = 1e25, 1e26, ...
//   frontier.deltas = 0.5, 1, 1.5, frontier.mode = to_date | year_largest
//   frontier.initial = 5e25
//   baseline.<threshold> = 4, baseline = none
//   trials, seed
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctf/scenario.hpp"

namespace ctf {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines. Throws ConfigError with the line number on
/// malformed input.
KeyValues parse_key_values(const std::string& text);

/// Applies one setting. Throws ConfigError for unknown keys or bad values.
void apply_setting(ScenarioConfig& config, const std::string& key, const std::string& value);

/// Canonical text form: every field, fixed order, round-trip numbers.
std::string to_key_value_text(const ScenarioConfig& config);

/// FNV-1a 64 of arbitrary text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// fnv1a_hex of the canonical text.
std::string config_hash(const ScenarioConfig& config);

struct Preset {
    std::string name;
    std::string description;
    KeyValues overrides;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

/// Preset names matching `pattern`; a trailing '*' matches any suffix.
std::vector<std::string> match_presets(const std::string& pattern);

/// Defaults, then the preset, then the file, then flag overrides; the result
/// is validated.
ScenarioConfig load_config(const std::optional<std::filesystem::path>& path, const std::string& preset,
                           const KeyValues& flag_overrides = {});

/// Parses "A..B" or a comma list into years.
std::vector<int> parse_years(const std::string& text);
/// Parses a comma-separated list of numbers.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace ctf
