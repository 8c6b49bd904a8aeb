// SPDX-License-Identifier: Apache-2.0
#include "ctf/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ctf/allocation.hpp"
#include "ctf/parallel.hpp"
#include "ctf/sampling.hpp"

namespace ctf {

std::map<int, double> project_training_compute(const ScenarioConfig& config, const std::map<int, double>& growth) {
    double stock = config.base_training_compute / config.base_share;
    std::map<int, double> out;
    for (int year : config.years) {
        auto share = config.share_schedule.find(year);
        if (share == config.share_schedule.end())
            throw ConfigError("share." + std::to_string(year) + ": missing training share");
        auto g = growth.find(year);
        if (g == growth.end())
            throw std::invalid_argument("project_training_compute: no growth draw for " + std::to_string(year));
        stock *= g->second;
        out[year] = stock * share->second;
    }
    return out;
}

YearSample simulate_year(double training_compute, double lms, double k, int num_bins, RngStream& stream) {
    if (!(training_compute > 0.0) || !std::isfinite(training_compute))
        throw std::invalid_argument("simulate_year: training compute must be positive");
    if (!(lms > 0.0 && lms <= 1.0)) throw std::invalid_argument("simulate_year: lms must lie in (0, 1]");

    const double largest = lms * training_compute;
    const auto fractions = allocate_compute(training_compute, k, num_bins);

    YearSample out;
    out.sizes.push_back(largest);
    out.bins.reserve(fractions.size());
    for (const auto& alloc : fractions) {
        BinFill bin;
        bin.bin_index = alloc.bin_index;
        bin.upper = largest * std::pow(10.0, -static_cast<double>(alloc.bin_index));
        bin.lower = largest * std::pow(10.0, -static_cast<double>(alloc.bin_index + 1));
        bin.allocation = alloc.compute;
        if (alloc.bin_index == 0) {
            bin.sampled = largest;
            bin.count = 1;
        }
        if (bin.allocation >= bin.lower) {
            while (bin.sampled < bin.allocation) {
                const double size = draw_model_size(bin.lower, bin.upper, stream);
                out.sizes.push_back(size);
                bin.sampled += size;
                ++bin.count;
            }
        }
        out.bins.push_back(bin);
    }
    return out;
}

std::map<int, double> draw_growth_path(const ScenarioConfig& config, std::uint64_t trial) {
    std::map<int, double> growth;
    if (config.growth_noise == DrawMode::per_trial) {
        auto stream = make_stream(config.seed, trial, kTrialWideYear, Purpose::growth);
        const double g = draw_growth(config.growth, stream);
        for (int year : config.years) growth[year] = g;
    } else {
        for (int year : config.years) {
            auto stream = make_stream(config.seed, trial, year, Purpose::growth);
            growth[year] = draw_growth(config.growth, stream);
        }
    }
    return growth;
}

TrialResult run_trial(const ScenarioConfig& config, std::uint64_t trial) {
    const auto growth = draw_growth_path(config, trial);
    const auto training = project_training_compute(config, growth);

    double trial_k = 0.0;
    if (config.gradient_mode == DrawMode::per_trial) {
        auto stream = make_stream(config.seed, trial, kTrialWideYear, Purpose::gradient);
        trial_k = draw_gradient(config.k_range.first, config.k_range.second, stream);
    }

    TrialResult result;
    result.trial = trial;
    result.years.reserve(config.years.size());
    for (int year : config.years) {
        YearOutcome y;
        y.year = year;
        y.growth = growth.at(year);
        y.training_compute = training.at(year);
        if (config.gradient_mode == DrawMode::per_year) {
            auto stream = make_stream(config.seed, trial, year, Purpose::gradient);
            y.gradient = draw_gradient(config.k_range.first, config.k_range.second, stream);
        } else {
            y.gradient = trial_k;
        }
        auto lms_stream = make_stream(config.seed, trial, year, Purpose::lms);
        y.lms = draw_lms(config.lms, year, lms_stream, y.training_compute);
        auto size_stream = make_stream(config.seed, trial, year, Purpose::model_size);
        auto sample = simulate_year(y.training_compute, y.lms, y.gradient, config.num_bins, size_stream);
        y.largest_model = sample.sizes.front();
        y.model_sizes = std::move(sample.sizes);
        result.years.push_back(std::move(y));
    }
    return result;
}

std::vector<TrialResult> run_forecast(const ScenarioConfig& config, unsigned workers) {
    config.validate();
    return parallel_map(config.trials, workers, [&](std::uint64_t trial) { return run_trial(config, trial); });
}

}  // namespace ctf
