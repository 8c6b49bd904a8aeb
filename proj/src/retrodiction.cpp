// SPDX-License-Identifier: Apache-2.0
#include "ctf/retrodiction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctf/engine.hpp"
#include "ctf/parallel.hpp"
#include "ctf/rng.hpp"

namespace ctf {
namespace {

std::vector<ModelRecord> included(std::span<const ModelRecord> records) {
    std::vector<ModelRecord> out;
    for (const auto& r : records)
        if (!r.excluded) out.push_back(r);
    return out;
}

struct Observed {
    std::vector<double> totals;          // per requested year
    std::vector<double> prior_frontier;  // largest record before each year
};

Observed observe(std::span<const ModelRecord> records, const RetroConfig& config) {
    const auto stats = year_stats(records);
    Observed o;
    for (int year : config.years) {
        auto it = stats.find(year);
        if (it == stats.end()) throw DatasetError("retrodict: no records for year " + std::to_string(year));
        o.totals.push_back(it->second.total_compute);
        o.prior_frontier.push_back(frontier_before(records, year));
    }
    return o;
}

TrialTables simulate_trial(const RetroConfig& config, const Observed& observed, std::uint64_t trial) {
    auto k_stream = make_stream(config.seed, trial, kTrialWideYear, Purpose::gradient);
    const double k = draw_gradient(config.k_range.first, config.k_range.second, k_stream);

    TrialResult result;
    result.trial = trial;
    for (std::size_t yi = 0; yi < config.years.size(); ++yi) {
        const int year = config.years[yi];
        YearOutcome y;
        y.year = year;
        y.training_compute = observed.totals[yi];
        y.gradient = k;
        auto lms_stream = make_stream(config.seed, trial, year, Purpose::lms);
        y.lms = draw_lms(config.lms, year, lms_stream, y.training_compute);
        auto size_stream = make_stream(config.seed, trial, year, Purpose::model_size);
        auto sample = simulate_year(y.training_compute, y.lms, k, config.num_bins, size_stream);
        y.largest_model = sample.sizes.front();
        y.model_sizes = std::move(sample.sizes);
        result.years.push_back(std::move(y));
    }

    TrialTables tables;
    tables.absolute = cumulative_counts(result, config.thresholds, {});
    tables.frontier = CountTable(config.years, config.frontier_deltas);
    for (std::size_t yi = 0; yi < result.years.size(); ++yi) {
        const auto& y = result.years[yi];
        const double frontier = std::max(observed.prior_frontier[yi], y.largest_model);
        for (std::size_t di = 0; di < config.frontier_deltas.size(); ++di) {
            const double cut = frontier * std::pow(10.0, -config.frontier_deltas[di]);
            std::int64_t n = 0;
            for (double s : y.model_sizes)
                if (s >= cut) ++n;
            tables.frontier.at(yi, di) = n;
        }
    }
    return tables;
}

std::vector<RetroCell> compare(const CountTable& observed, const SummaryTable& simulated) {
    std::vector<RetroCell> cells;
    for (std::size_t ki = 0; ki < observed.keys.size(); ++ki) {
        for (std::size_t yi = 0; yi < observed.years.size(); ++yi) {
            RetroCell c;
            c.year = observed.years[yi];
            c.key = observed.keys[ki];
            c.observed = observed.at(yi, ki);
            c.interval = simulated.triple(c.year, c.key);
            c.contained = c.interval.p5 <= c.observed && c.observed <= c.interval.p95;
            cells.push_back(c);
        }
    }
    return cells;
}

}  // namespace

void RetroConfig::validate() const {
    if (years.empty()) throw ConfigError("years: at least one year is required");
    for (std::size_t i = 1; i < years.size(); ++i)
        if (years[i] != years[i - 1] + 1) throw ConfigError("years: must be contiguous and ascending");
    try {
        lms.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("lms: ") + e.what());
    }
    if (!lms.pinned.empty()) throw ConfigError("lms: retrodiction does not use pinned years");
    if (!(k_range.first > 0.0 && k_range.first <= k_range.second)) throw ConfigError("k_range: need 0 < lo <= hi");
    if (num_bins < 1) throw ConfigError("num_bins: must be at least 1");
    if (trials < 1 || trials > 0xFFFFFFFFull) throw ConfigError("trials: must be in [1, 2^32)");
}

std::size_t RetrodictionReport::contained() const {
    std::size_t n = 0;
    for (const auto& c : absolute) n += c.contained ? 1 : 0;
    for (const auto& c : frontier) n += c.contained ? 1 : 0;
    return n;
}

std::vector<TrialTables> retrodiction_tables(std::span<const ModelRecord> records, const RetroConfig& config,
                                             unsigned workers) {
    config.validate();
    const auto kept = included(records);
    const auto observed = observe(kept, config);
    return parallel_map(config.trials, workers,
                        [&](std::uint64_t trial) { return simulate_trial(config, observed, trial); });
}

RetrodictionReport retrodict(std::span<const ModelRecord> records, const RetroConfig& config, unsigned workers) {
    const auto tables = retrodiction_tables(records, config, workers);
    const auto kept = included(records);

    std::vector<CountTable> absolute, frontier;
    for (const auto& t : tables) {
        absolute.push_back(t.absolute);
        frontier.push_back(t.frontier);
    }
    RetrodictionReport report;
    report.absolute = compare(observed_threshold_counts(kept, config.thresholds, config.years, true),
                              summarize(absolute));
    report.frontier = compare(observed_frontier_counts(kept, config.frontier_deltas, config.years),
                              summarize(frontier));
    return report;
}

}  // namespace ctf
