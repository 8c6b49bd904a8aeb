// SPDX-License-Identifier: Apache-2.0
//
// Retrodiction: replay the allocation model over historical years using the
// observed yearly training totals, then check whether the observed threshold
// counts fall inside the simulated 90% intervals.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ctf/dataset.hpp"
#include "ctf/metrics.hpp"
#include "ctf/sampling.hpp"

namespace ctf {

struct RetroConfig {
    std::vector<int> years{2020, 2021, 2022, 2023};
    LmsSpec lms{LmsShape::uniform, 0.05, 0.5, {}};
    std::pair<double, double> k_range{0.9, 1.1};
    int num_bins = 7;
    std::vector<double> thresholds{1e23, 1e24, 1e25};
    std::vector<double> frontier_deltas{0.5, 1.0, 1.5};
    std::uint64_t trials = 1000;
    std::uint64_t seed = 42;

    void validate() const;
};

struct RetroCell {
    int year = 0;
    double key = 0.0;  // threshold (FLOP) or delta (OOM)
    std::int64_t observed = 0;
    PercentileTriple interval;
    bool contained = false;  // p5 <= observed <= p95
};

struct RetrodictionReport {
    std::vector<RetroCell> absolute;
    std::vector<RetroCell> frontier;

    std::size_t contained() const;
    std::size_t total() const { return absolute.size() + frontier.size(); }
};

/// Per-trial simulated count tables; exposed for diagnostics.
std::vector<TrialTables> retrodiction_tables(std::span<const ModelRecord> records, const RetroConfig& config,
                                             unsigned workers = 1);

/// `records` should already have exclusions applied; records before the first
/// year supply the prior frontier. Absolute counts accumulate from the first
/// year with no baseline. Throws DatasetError if a year has no records.
RetrodictionReport retrodict(std::span<const ModelRecord> records, const RetroConfig& config, unsigned workers = 1);

}  // namespace ctf
