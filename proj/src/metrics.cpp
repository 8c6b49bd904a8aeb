// SPDX-License-Identifier: Apache-2.0
#include "ctf/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "ctf/parallel.hpp"
#include "ctf/rng.hpp"

namespace ctf {

CountTable cumulative_counts(const TrialResult& trial, std::span<const double> thresholds,
                             const std::map<double, std::int64_t>& baseline_counts) {
    std::vector<int> years;
    for (const auto& y : trial.years) years.push_back(y.year);
    CountTable table(years, {thresholds.begin(), thresholds.end()});

    std::vector<std::int64_t> running(thresholds.size(), 0);
    for (std::size_t ti = 0; ti < thresholds.size(); ++ti)
        if (auto it = baseline_counts.find(thresholds[ti]); it != baseline_counts.end()) running[ti] = it->second;

    for (std::size_t yi = 0; yi < trial.years.size(); ++yi) {
        for (double size : trial.years[yi].model_sizes)
            for (std::size_t ti = 0; ti < thresholds.size(); ++ti)
                if (size > thresholds[ti]) ++running[ti];
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti) table.at(yi, ti) = running[ti];
    }
    return table;
}

CountTable frontier_counts(const TrialResult& trial, std::span<const double> deltas, double initial_frontier,
                           FrontierMode mode) {
    if (!(initial_frontier > 0.0)) throw std::invalid_argument("frontier_counts: initial frontier must be positive");
    std::vector<int> years;
    for (const auto& y : trial.years) years.push_back(y.year);
    CountTable table(years, {deltas.begin(), deltas.end()});

    double frontier = initial_frontier;
    for (std::size_t yi = 0; yi < trial.years.size(); ++yi) {
        const auto& year = trial.years[yi];
        const double reference =
            mode == FrontierMode::to_date ? (frontier = std::max(frontier, year.largest_model)) : year.largest_model;
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            const double cut = reference * std::pow(10.0, -deltas[di]);
            std::int64_t n = 0;
            for (double size : year.model_sizes)
                if (size >= cut) ++n;
            table.at(yi, di) = n;
        }
    }
    return table;
}

std::int64_t nearest_rank(std::span<const std::int64_t> sorted, int percentile) {
    if (sorted.empty()) throw std::invalid_argument("nearest_rank: empty sample");
    if (percentile < 0 || percentile > 100) throw std::invalid_argument("nearest_rank: percentile outside [0, 100]");
    const auto n = static_cast<std::int64_t>(sorted.size());
    std::int64_t rank = (static_cast<std::int64_t>(percentile) * n + 99) / 100;  // ceil(p*N/100)
    rank = std::clamp<std::int64_t>(rank, 1, n);
    return sorted[static_cast<std::size_t>(rank - 1)];
}

PercentileTriple SummaryTable::triple(int year, double key) const {
    std::size_t yi = years.size(), ki = keys.size();
    for (std::size_t i = 0; i < years.size(); ++i)
        if (years[i] == year) yi = i;
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == key) ki = i;
    if (yi == years.size() || ki == keys.size()) throw std::out_of_range("SummaryTable: no such cell");
    auto pct = [&](int p) {
        for (std::size_t i = 0; i < percentiles.size(); ++i)
            if (percentiles[i] == p) return value(yi, ki, i);
        throw std::out_of_range("SummaryTable: percentile not present");
    };
    return {pct(5), pct(50), pct(95)};
}

SummaryTable summarize(std::span<const CountTable> tables, std::span<const int> percentiles) {
    if (tables.empty()) throw std::invalid_argument("summarize: need at least one trial");
    const auto& shape = tables.front();
    SummaryTable out;
    out.years = shape.years;
    out.keys = shape.keys;
    out.percentiles.assign(percentiles.begin(), percentiles.end());
    out.values.resize(shape.years.size() * shape.keys.size() * percentiles.size());

    std::vector<std::int64_t> column(tables.size());
    for (std::size_t yi = 0; yi < shape.years.size(); ++yi) {
        for (std::size_t ki = 0; ki < shape.keys.size(); ++ki) {
            for (std::size_t t = 0; t < tables.size(); ++t) {
                if (tables[t].years != shape.years || tables[t].keys != shape.keys)
                    throw std::invalid_argument("summarize: trial tables differ in shape");
                column[t] = tables[t].at(yi, ki);
            }
            std::sort(column.begin(), column.end());
            for (std::size_t pi = 0; pi < percentiles.size(); ++pi)
                out.values[(yi * shape.keys.size() + ki) * percentiles.size() + pi] =
                    nearest_rank(column, percentiles[pi]);
        }
    }
    return out;
}

SummaryTable summarize(std::span<const CountTable> tables) {
    static constexpr std::array<int, 3> kDefault{5, 50, 95};
    return summarize(tables, kDefault);
}

TrialTables trial_tables(const TrialResult& trial, const ScenarioConfig& config) {
    return {cumulative_counts(trial, config.thresholds, config.baseline_counts),
            frontier_counts(trial, config.frontier_deltas, config.initial_frontier, config.frontier_mode)};
}

std::vector<TrialTables> forecast_tables(const ScenarioConfig& config, unsigned workers) {
    config.validate();
    return parallel_map(config.trials, workers,
                        [&](std::uint64_t trial) { return trial_tables(run_trial(config, trial), config); });
}

ForecastSummary summarize_forecast(const ScenarioConfig& config, std::span<const TrialTables> tables,
                                   std::string config_hash) {
    std::vector<CountTable> absolute, frontier;
    absolute.reserve(tables.size());
    frontier.reserve(tables.size());
    for (const auto& t : tables) {
        absolute.push_back(t.absolute);
        frontier.push_back(t.frontier);
    }
    ForecastSummary s;
    s.absolute = summarize(absolute);
    s.frontier = summarize(frontier);
    s.meta = {std::move(config_hash), config.seed, kGeneratorId, static_cast<std::uint64_t>(tables.size())};
    return s;
}

}  // namespace ctf
