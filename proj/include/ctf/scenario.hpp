// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctf/sampling.hpp"

namespace ctf {

/// Invalid scenario configuration; the message starts with the field name.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How often a random quantity is redrawn inside one trial.
enum class DrawMode { per_trial, per_year };

/// Reference for frontier-connected counting: the largest model released up
/// to and including the year, or only that year's largest model.
enum class FrontierMode { to_date, year_largest };

struct ScenarioConfig {
    int base_year = 2023;
    double base_training_compute = 1.35e26;  // FLOP spent on training in base_year
    /// Training share of the workload stock in base_year; the workload stock
    /// is base_training_compute / base_share.
    double base_share = 0.40;
    std::vector<int> years{2024, 2025, 2026, 2027, 2028};
    std::map<int, double> share_schedule{{2024, 0.40}, {2025, 0.40}, {2026, 0.40}, {2027, 0.30}, {2028, 0.30}};
    GrowthSpec growth;
    DrawMode growth_noise = DrawMode::per_year;
    LmsSpec lms{LmsShape::lognormal, 0.05, 0.5, {{2024, 3.8e25}}};
    std::pair<double, double> k_range{0.9, 1.1};
    DrawMode gradient_mode = DrawMode::per_trial;
    int num_bins = 7;
    std::vector<double> thresholds{1e25, 1e26, 1e27, 1e28, 1e29};
    std::vector<double> frontier_deltas{0.5, 1.0, 1.5};
    FrontierMode frontier_mode = FrontierMode::to_date;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 42;
    /// Models above each threshold released up to the end of base_year.
    std::map<double, std::int64_t> baseline_counts{{1e25, 4}};
    /// Largest model released before the first simulated year.
    double initial_frontier = 5e25;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

}  // namespace ctf
