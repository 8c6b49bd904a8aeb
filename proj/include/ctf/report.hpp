// SPDX-License-Identifier: Apache-2.0
//
// Text renderings of summaries and reports. Every file starts with `#`
// comment lines carrying the run metadata, followed by a CSV table. Counts
// are integers; FLOP values use 3 significant figures.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "ctf/allocation.hpp"
#include "ctf/count_table.hpp"
#include "ctf/dataset.hpp"
#include "ctf/engine.hpp"
#include "ctf/metrics.hpp"
#include "ctf/retrodiction.hpp"

namespace ctf {

/// `# key=value` lines for hash, seed, generator and trial count. A generator
/// of "none" marks a deterministic command.
std::string metadata_header(const RunMetadata& meta);

/// year,threshold_flop,p5,p50,p95
std::string render_absolute_csv(const SummaryTable& table, const RunMetadata& meta);
/// year,delta_oom,p5,p50,p95
std::string render_frontier_csv(const SummaryTable& table, const RunMetadata& meta);
/// Both tables plus metadata as JSON.
std::string render_summary_json(const ForecastSummary& summary);

/// table,year,key,observed,p5,p50,p95,contained, then `# contained: X/Y cells`.
std::string render_retrodiction_csv(const RetrodictionReport& report, const RunMetadata& meta);
std::string containment_line(const RetrodictionReport& report);

/// year,k,residual_rms,num_points
std::string render_fit_csv(std::span<const AllocationFit> fits, const RunMetadata& meta);
/// year,normalized_size,cumulative_fraction
std::string render_fit_points_csv(std::span<const AllocationFit> fits, const RunMetadata& meta);

/// year,threshold_flop,count  or  year,delta_oom,count
std::string render_observed_csv(const CountTable& table, bool thresholds, const RunMetadata& meta);
/// year,models,total_compute_flop,largest_model_flop,largest_share
std::string render_year_stats_csv(const std::map<int, YearStats>& stats, const RunMetadata& meta);

/// Per-(trial, year) draws: trial,year,growth,training_compute_flop,lms,k,largest_model_flop,models
std::string render_trace_csv(std::span<const TrialResult> trials, const RunMetadata& meta);
/// Every emitted model: trial,year,size_flop
std::string render_trace_models_csv(std::span<const TrialResult> trials, const RunMetadata& meta);

struct SweepEntry {
    std::string preset;
    ForecastSummary summary;
};
/// preset,table,year,key,p5,p50,p95
std::string render_sweep_comparison_csv(std::span<const SweepEntry> entries);

}  // namespace ctf
