// SPDX-License-Identifier: Apache-2.0
//
// Compute allocation across model scales.
//
// For one year, sort models by training compute and normalise by the largest
// one (m̃ = m / m_max). The cumulative share of compute spent on models of
// normalised size m̃ or less, A(m̃), is a straight line in log-log space that
// must pass through (1, 1), so A(m̃) = m̃^k. The gradient k fixes how much
// compute each one-OOM band below the frontier receives:
//
//   fraction_i = 10^(-i k) - 10^(-(i+1) k),   band i = (10^-(i+1), 10^-i]
//
// so each band receives 10^k times the compute of the band below it.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ctf {

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CdfPoint {
    double normalized_size;     // m̃ in (0, 1]
    double cumulative_fraction; // A in (0, 1]
};

struct AllocationFit {
    int year = 0;
    double k = 0.0;
    double intercept = 0.0;  // always 0: the fit is pinned at (1, 1)
    double residual_rms = 0.0;
    std::vector<CdfPoint> points;
};

struct BinAllocation {
    int bin_index = 0;     // bin i spans normalised sizes (10^-(i+1), 10^-i]
    double fraction = 0.0;
    double compute = 0.0;  // FLOP; zero when only fractions were requested
};

/// Empirical cumulative allocation curve of one year's model computes.
/// The last point is exactly (1, 1). Throws FitError for fewer than two models.
std::vector<CdfPoint> empirical_cdf(std::span<const double> computes);

/// Least squares in log10 space with the intercept fixed at zero:
/// k = Σ x·y / Σ x², x = log10 m̃, y = log10 A. Points at m̃ = 1 carry no
/// information and are left out of the residual. Throws FitError when every
/// point sits at m̃ = 1.
AllocationFit fit_allocation_gradient(std::span<const CdfPoint> points, int year = 0);

std::vector<BinAllocation> bin_fractions(double k, int num_bins);

/// Bin fractions scaled by the total training compute of the year.
std::vector<BinAllocation> allocate_compute(double total_training_compute, double k, int num_bins);

}  // namespace ctf
