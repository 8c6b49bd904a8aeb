// SPDX-License-Identifier: Apache-2.0
#include "ctf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ctf {

double GrowthSpec::central() const {
    double g = 0.0;
    for (const auto& r : rates) g += r.weight * r.multiplier;
    return g;
}

void GrowthSpec::validate() const {
    if (rates.empty()) throw std::invalid_argument("growth: at least one rate is required");
    double total = 0.0;
    for (const auto& r : rates) {
        if (!(r.multiplier > 1.0)) throw std::invalid_argument("growth: multipliers must exceed 1");
        if (!(r.weight >= 0.0)) throw std::invalid_argument("growth: weights must be non-negative");
        total += r.weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("growth: weights must sum to 1 (got " + std::to_string(total) + ")");
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd))
        throw std::invalid_argument("growth: noise_sd must be non-negative");
}

double LmsSpec::log_mu() const { return 0.5 * (std::log(lo) + std::log(hi)); }
double LmsSpec::log_sigma() const { return (std::log(hi) - std::log(lo)) / 4.0; }

void LmsSpec::validate() const {
    if (!(lo > 0.0 && lo <= hi && hi <= 1.0))
        throw std::invalid_argument("lms: bounds must satisfy 0 < lo <= hi <= 1");
    for (const auto& [year, flop] : pinned)
        if (!(flop > 0.0) || !std::isfinite(flop))
            throw std::invalid_argument("lms: pinned largest model for " + std::to_string(year) + " must be positive");
}

double draw_growth(const GrowthSpec& spec, RngStream& stream) {
    const double noise = spec.noise_sd > 0.0 ? spec.noise_sd * stream.normal() : 0.0;
    return std::max(1.0, spec.central() + noise);
}

double draw_lms(const LmsSpec& spec, int year, RngStream& stream, std::optional<double> total_training_compute) {
    if (auto pin = spec.pinned.find(year); pin != spec.pinned.end()) {
        if (!total_training_compute || !(*total_training_compute > 0.0))
            throw std::invalid_argument("draw_lms: pinned year " + std::to_string(year) +
                                        " needs the year's total training compute");
        const double share = pin->second / *total_training_compute;
        if (share >= 1.0)
            throw std::domain_error("draw_lms: pinned largest model for " + std::to_string(year) +
                                    " is not smaller than the total training compute");
        return share;
    }
    if (spec.lo == spec.hi) return spec.lo;
    switch (spec.shape) {
        case LmsShape::uniform:
            return spec.lo + (spec.hi - spec.lo) * stream.uniform();
        case LmsShape::lognormal: {
            const double mu = spec.log_mu();
            const double sigma = spec.log_sigma();
            for (;;) {
                const double v = std::exp(mu + sigma * stream.normal());
                if (v >= spec.lo && v <= spec.hi) return v;
            }
        }
    }
    throw std::logic_error("draw_lms: unknown shape");
}

double draw_gradient(double lo, double hi, RngStream& stream) {
    if (!(lo > 0.0 && lo <= hi)) throw std::invalid_argument("draw_gradient: need 0 < lo <= hi");
    if (lo == hi) return lo;
    return lo + (hi - lo) * stream.uniform();
}

double draw_model_size(double lower, double upper, RngStream& stream) {
    if (!(lower > 0.0 && lower < upper)) throw std::invalid_argument("draw_model_size: need 0 < lower < upper");
    const double a = std::log(lower);
    const double b = std::log(upper);
    const double v = std::exp(a + (b - a) * stream.uniform());
    // exp(log(x)) can round past either bound; keep the half-open contract.
    if (v < lower) return lower;
    return v < upper ? v : std::nextafter(upper, 0.0);
}

}  // namespace ctf
