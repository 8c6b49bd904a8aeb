// SPDX-License-Identifier: Apache-2.0
//
// Reductions from trial results to threshold-count tables and percentile
// summaries.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ctf/count_table.hpp"
#include "ctf/engine.hpp"
#include "ctf/scenario.hpp"

namespace ctf {

/// count(year, t) = baseline[t] + models released up to `year` with size > t.
CountTable cumulative_counts(const TrialResult& trial, std::span<const double> thresholds,
                             const std::map<double, std::int64_t>& baseline_counts);

/// Per-year count of models with size >= F * 10^-delta, where F is the
/// running maximum of initial_frontier and each year's largest model
/// (to_date), or just the year's largest model (year_largest).
CountTable frontier_counts(const TrialResult& trial, std::span<const double> deltas, double initial_frontier,
                           FrontierMode mode = FrontierMode::to_date);

struct PercentileTriple {
    std::int64_t p5 = 0;
    std::int64_t p50 = 0;
    std::int64_t p95 = 0;
    bool operator==(const PercentileTriple&) const = default;
};

/// Nearest-rank percentile of an ascending sample: the value at 1-based rank
/// ceil(p/100 * N).
std::int64_t nearest_rank(std::span<const std::int64_t> sorted, int percentile);

struct SummaryTable {
    std::vector<int> years;
    std::vector<double> keys;
    std::vector<int> percentiles;
    std::vector<std::int64_t> values;  // [year][key][percentile]

    std::int64_t value(std::size_t year_idx, std::size_t key_idx, std::size_t pct_idx) const {
        return values.at((year_idx * keys.size() + key_idx) * percentiles.size() + pct_idx);
    }
    /// (p5, p50, p95) for one cell; requires those percentiles to be present.
    PercentileTriple triple(int year, double key) const;
};

SummaryTable summarize(std::span<const CountTable> tables, std::span<const int> percentiles);
SummaryTable summarize(std::span<const CountTable> tables);  // {5, 50, 95}

struct TrialTables {
    CountTable absolute;
    CountTable frontier;
};

TrialTables trial_tables(const TrialResult& trial, const ScenarioConfig& config);

/// Runs every trial and keeps only its count tables, so memory stays bounded
/// for scenarios that emit very many small models.
std::vector<TrialTables> forecast_tables(const ScenarioConfig& config, unsigned workers = 1);

struct RunMetadata {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string generator;
    std::uint64_t trials = 0;
};

struct ForecastSummary {
    SummaryTable absolute;
    SummaryTable frontier;
    RunMetadata meta;
};

ForecastSummary summarize_forecast(const ScenarioConfig& config, std::span<const TrialTables> tables,
                                   std::string config_hash);

}  // namespace ctf
