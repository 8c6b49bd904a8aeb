// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo forecast engine.
//
// One trial is one possible world. For each simulated year:
//   1. the workload compute stock grows by a sampled multiplier and the
//      year's training share of it gives the training compute T;
//   2. the largest model is M = LMS * T;
//   3. T is split over one-OOM bins below M by the allocation gradient k;
//   4. each bin is filled with log-uniform model sizes until its allocation
//      is met or exceeded. M itself is emitted first and charged to bin 0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "ctf/rng.hpp"
#include "ctf/scenario.hpp"

namespace ctf {

struct BinFill {
    int bin_index = 0;
    double lower = 0.0;       // FLOP, exclusive
    double upper = 0.0;       // FLOP, inclusive
    double allocation = 0.0;  // FLOP assigned to the bin
    double sampled = 0.0;     // FLOP actually emitted
    std::size_t count = 0;
};

struct YearSample {
    std::vector<double> sizes;  // frontier model first
    std::vector<BinFill> bins;
};

struct YearOutcome {
    int year = 0;
    double growth = 0.0;
    double training_compute = 0.0;
    double lms = 0.0;
    double gradient = 0.0;
    double largest_model = 0.0;
    std::vector<double> model_sizes;
};

struct TrialResult {
    std::uint64_t trial = 0;
    std::vector<YearOutcome> years;
};

/// Training compute per simulated year given one growth multiplier per year:
/// W_base = base_training_compute / base_share, W_y = W_{y-1} * g_y,
/// T_y = W_y * share_y.
std::map<int, double> project_training_compute(const ScenarioConfig& config, const std::map<int, double>& growth);

/// Realises one year of model releases. Bins whose allocation is below their
/// lower size bound emit nothing.
YearSample simulate_year(double training_compute, double lms, double k, int num_bins, RngStream& stream);

/// Growth, LMS and model-size draws of one trial; k is drawn once per trial
/// unless gradient_mode is per_year.
std::map<int, double> draw_growth_path(const ScenarioConfig& config, std::uint64_t trial);

TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial);

/// All trials, ordered by trial index. The output does not depend on `workers`.
std::vector<TrialResult> run_forecast(const ScenarioConfig& config, unsigned workers = 1);

}  // namespace ctf
