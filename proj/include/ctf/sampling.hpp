// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ctf/rng.hpp"

namespace ctf {

struct GrowthRate {
    double multiplier = 1.0;  // x per year
    double weight = 0.0;
};

/// Annual growth of the AI workload compute stock: a weighted mixture of
/// candidate rates plus additive Gaussian noise.
struct GrowthSpec {
    std::vector<GrowthRate> rates{{6.3, 0.25}, {3.4, 0.75}};
    double noise_sd = 0.5;

    /// Σ weight · multiplier (4.125 at defaults).
    double central() const;
    void validate() const;
};

enum class LmsShape { uniform, lognormal };

/// Largest-model share: fraction of a year's training compute used by that
/// year's largest run.
struct LmsSpec {
    LmsShape shape = LmsShape::lognormal;
    double lo = 0.05;
    double hi = 0.5;
    /// Years whose largest model is fixed in FLOP (e.g. 2024 -> 3.8e25).
    std::map<int, double> pinned;

    /// log LMS ~ N(mu, sigma) with mu the midpoint of the log bounds and
    /// sigma a quarter of their distance, truncated to [lo, hi].
    double log_mu() const;
    double log_sigma() const;
    void validate() const;
};

/// Mixture rate plus N(0, noise_sd) noise, clamped below at 1.0.
double draw_growth(const GrowthSpec& spec, RngStream& stream);

/// Pinned years return pinned / total (requires the year's total training
/// compute); otherwise Uniform(lo, hi) or the truncated lognormal, truncated
/// by resampling.
double draw_lms(const LmsSpec& spec, int year, RngStream& stream,
                std::optional<double> total_training_compute = std::nullopt);

/// Uniform(lo, hi); lo == hi returns lo.
double draw_gradient(double lo, double hi, RngStream& stream);

/// Log-uniform on [lower, upper).
double draw_model_size(double lower, double upper, RngStream& stream);

}  // namespace ctf
