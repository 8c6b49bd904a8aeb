// SPDX-License-Identifier: Apache-2.0
#include "ctf/scenario.hpp"

#include <cmath>

namespace ctf {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) { throw ConfigError(field + ": " + msg); }

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void ScenarioConfig::validate() const {
    if (!positive_finite(base_training_compute)) fail("base_training_compute", "must be positive");
    if (!(base_share > 0.0 && base_share <= 1.0)) fail("base_share", "must lie in (0, 1]");
    if (years.empty()) fail("years", "at least one year is required");
    if (years.front() <= base_year) fail("years", "must start after base_year");
    for (std::size_t i = 1; i < years.size(); ++i)
        if (years[i] != years[i - 1] + 1) fail("years", "must be contiguous and ascending");
    for (int y : years) {
        auto it = share_schedule.find(y);
        if (it == share_schedule.end()) fail("share." + std::to_string(y), "missing training share");
        if (!(it->second > 0.0 && it->second <= 1.0)) fail("share." + std::to_string(y), "must lie in (0, 1]");
    }
    try {
        growth.validate();
    } catch (const std::invalid_argument& e) {
        fail("growth", e.what());
    }
    try {
        lms.validate();
    } catch (const std::invalid_argument& e) {
        fail("lms", e.what());
    }
    if (!(k_range.first > 0.0 && k_range.first <= k_range.second)) fail("k_range", "need 0 < lo <= hi");
    if (num_bins < 1) fail("num_bins", "must be at least 1");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!positive_finite(thresholds[i])) fail("thresholds", "must be positive");
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) fail("thresholds", "must be strictly increasing");
    }
    for (std::size_t i = 0; i < frontier_deltas.size(); ++i) {
        if (!positive_finite(frontier_deltas[i])) fail("frontier_deltas", "must be positive");
        if (i > 0 && !(frontier_deltas[i] > frontier_deltas[i - 1]))
            fail("frontier_deltas", "must be strictly increasing");
    }
    if (trials < 1) fail("trials", "must be at least 1");
    if (trials > 0xFFFFFFFFull) fail("trials", "must fit in 32 bits");
    for (const auto& [t, c] : baseline_counts)
        if (c < 0) fail("baseline", "counts must be non-negative");
    if (!positive_finite(initial_frontier)) fail("initial_frontier", "must be positive");
}

}  // namespace ctf
