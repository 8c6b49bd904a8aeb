// SPDX-License-Identifier: Apache-2.0
#include "ctf/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctf/numeric.hpp"

namespace ctf {

std::vector<CdfPoint> empirical_cdf(std::span<const double> computes) {
    if (computes.size() < 2)
        throw FitError("empirical_cdf: need at least two models, got " + std::to_string(computes.size()));
    std::vector<double> sorted(computes.begin(), computes.end());
    for (double c : sorted)
        if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("empirical_cdf: computes must be positive");
    std::sort(sorted.begin(), sorted.end());

    const double largest = sorted.back();
    CompensatedSum total;
    for (double c : sorted) total.add(c);
    const double denom = total.value();

    std::vector<CdfPoint> points;
    points.reserve(sorted.size());
    CompensatedSum running;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        running.add(sorted[j]);
        points.push_back({sorted[j] / largest, running.value() / denom});
    }
    points.back() = {1.0, 1.0};
    return points;
}

AllocationFit fit_allocation_gradient(std::span<const CdfPoint> points, int year) {
    if (points.size() < 2) throw FitError("fit_allocation_gradient: need at least two points");
    double sxx = 0.0, sxy = 0.0;
    std::size_t informative = 0;
    for (const auto& p : points) {
        if (!(p.normalized_size > 0.0 && p.normalized_size <= 1.0) ||
            !(p.cumulative_fraction > 0.0 && p.cumulative_fraction <= 1.0))
            throw std::invalid_argument("fit_allocation_gradient: coordinates must lie in (0, 1]");
        const double x = std::log10(p.normalized_size);
        if (x == 0.0) continue;
        const double y = std::log10(p.cumulative_fraction);
        sxx += x * x;
        sxy += x * y;
        ++informative;
    }
    if (informative == 0) throw FitError("fit_allocation_gradient: degenerate fit, all points at m~ = 1");

    AllocationFit fit;
    fit.year = year;
    fit.k = sxy / sxx;
    fit.points.assign(points.begin(), points.end());

    double ss = 0.0;
    for (const auto& p : points) {
        const double x = std::log10(p.normalized_size);
        if (x == 0.0) continue;
        const double r = std::log10(p.cumulative_fraction) - fit.k * x;
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(informative));
    return fit;
}

std::vector<BinAllocation> bin_fractions(double k, int num_bins) {
    if (!(k > 0.0)) throw std::invalid_argument("bin_fractions: k must be positive");
    if (num_bins < 1) throw std::invalid_argument("bin_fractions: need at least one bin");
    std::vector<BinAllocation> out;
    out.reserve(static_cast<std::size_t>(num_bins));
    for (int i = 0; i < num_bins; ++i) {
        const double upper = std::pow(10.0, -static_cast<double>(i) * k);
        const double lower = std::pow(10.0, -static_cast<double>(i + 1) * k);
        out.push_back({i, upper - lower, 0.0});
    }
    return out;
}

std::vector<BinAllocation> allocate_compute(double total_training_compute, double k, int num_bins) {
    if (!(total_training_compute > 0.0) || !std::isfinite(total_training_compute))
        throw std::invalid_argument("allocate_compute: total training compute must be positive");
    auto bins = bin_fractions(k, num_bins);
    for (auto& b : bins) b.compute = b.fraction * total_training_compute;
    return bins;
}

}  // namespace ctf
