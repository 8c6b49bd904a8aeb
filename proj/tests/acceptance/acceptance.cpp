// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ctf/allocation.hpp"
#include "ctf/commands.hpp"
#include "ctf/config_io.hpp"
#include "ctf/dataset.hpp"
#include "ctf/engine.hpp"
#include "ctf/metrics.hpp"
#include "ctf/retrodiction.hpp"
#include "ctf/rng.hpp"
#include "ctf/sampling.hpp"

#ifndef CTF_FIXTURE
#error "CTF_FIXTURE must point at the bundled dataset"
#endif

namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

// Rounds to `sig` significant figures.
double round_sig(double v, int sig) {
    if (v == 0.0) return 0.0;
    const double mag = std::floor(std::log10(std::abs(v)));
    const double scale = std::pow(10.0, sig - 1 - mag);
    return std::round(v * scale) / scale;
}

bool same_2sf(double a, double b) {
    const double ra = round_sig(a, 2), rb = round_sig(b, 2);
    return std::abs(ra - rb) <= 1e-9 * std::abs(rb);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<ctf::ModelRecord> fixture_records() { return ctf::load_dataset(CTF_FIXTURE).records; }

ctf::ForecastSummary baseline_summary(const std::string& preset = "baseline") {
    auto config = ctf::load_config(std::nullopt, preset, {{"seed", "42"}});
    const auto tables = ctf::forecast_tables(config, 4);
    return ctf::summarize_forecast(config, tables, ctf::config_hash(config));
}

// Percent allocations per bin, listed from the smallest bin (1e-7..1e-6 of the
// frontier) to the top bin.
struct AllocationRow {
    double k;
    std::array<double, 7> percent;
};

const std::vector<AllocationRow> kAllocationTable = {
    {0.5, {0.068, 0.22, 0.68, 2.2, 6.8, 22, 68}},
    {0.75, {0.0026, 0.015, 0.082, 0.46, 2.6, 15, 82}},
    {0.9, {0.00035, 0.0028, 0.022, 0.17, 1.4, 11, 87}},
    {1.0, {9e-5, 0.0009, 0.009, 0.09, 0.9, 9, 90}},
    {1.1, {2.3e-5, 0.00029, 0.0037, 0.046, 0.58, 7.3, 92}},
    {1.25, {3e-6, 5.3e-5, 0.00094, 0.017, 0.3, 5.3, 94}},
    {1.5, {9.7e-8, 3.1e-6, 9.7e-5, 0.0031, 0.097, 3.1, 97}},
};

const std::vector<AllocationRow> kLowGradientTable = {
    {0.5, {0.068, 0.22, 0.68, 2.2, 6.8, 22, 68}},
    {0.6, {0.019, 0.075, 0.3, 1.2, 4.7, 19, 75}},
    {0.7, {0.0051, 0.025, 0.13, 0.64, 3.2, 16, 80}},
    {0.8, {0.0013, 0.0084, 0.053, 0.34, 2.1, 13, 84}},
    {0.9, {0.00035, 0.0028, 0.022, 0.17, 1.4, 11, 87}},
    {1.0, {0.00009, 0.0009, 0.009, 0.09, 0.9, 9, 90}},
};

Outcome allocation_tables() {
    int cells = 0, matched = 0;
    std::string first_miss;
    for (const auto* table : {&kAllocationTable, &kLowGradientTable}) {
        for (const auto& row : *table) {
            const auto bins = ctf::bin_fractions(row.k, 7);
            for (int col = 0; col < 7; ++col) {
                const double got = 100.0 * bins[6 - col].fraction;
                ++cells;
                if (same_2sf(got, row.percent[col]))
                    ++matched;
                else if (first_miss.empty())
                    first_miss = " first miss k=" + fmt(row.k) + " col " + std::to_string(col) + ": " + fmt(got) +
                                 " vs " + fmt(row.percent[col]);
            }
        }
    }
    return {matched == cells, std::to_string(matched) + "/" + std::to_string(cells) + " cells at 2 s.f." + first_miss};
}

Outcome table_one() {
    // Bins from the top: (5e24, 5e25], (5e23, 5e24], ... with T = 1.35e26.
    const std::array<double, 5> expected{1.22e26, 1.16e25, 1.36e24, 1.43e23, 1.51e22};
    const double k = std::log10(1.0 / (1.0 - 0.90));  // 1 - 10^-k = 0.90
    const auto alloc = ctf::allocate_compute(1.35e26, k, 7);
    int matched = 0;
    std::string detail = "k=" + fmt(k) + ";";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const bool ok = same_2sf(alloc[i].compute, expected[i]);
        matched += ok ? 1 : 0;
        detail += " " + fmt(alloc[i].compute) + (ok ? "=" : "!=") + fmt(expected[i]);
    }
    return {matched == static_cast<int>(expected.size()), detail};
}

Outcome toy_equivalence() {
    auto mean_counts = [](double lms) {
        std::vector<double> mean(4, 0.0);
        for (std::uint64_t rep = 0; rep < 200; ++rep) {
            auto stream = ctf::make_stream(7, rep, 2030, ctf::Purpose::model_size);
            const auto sample = ctf::simulate_year(1e30, lms, 1.0, 4, stream);
            for (const auto& b : sample.bins) mean[b.bin_index] += static_cast<double>(b.count) / 200.0;
        }
        return mean;
    };
    const auto small = mean_counts(0.05);
    const auto large = mean_counts(0.5);
    bool ok = true;
    std::string detail = "LMS 0.05:";
    for (double m : small) {
        ok = ok && std::abs(m - 56.0) <= 0.10 * 56.0;
        detail += " " + fmt(m);
    }
    detail += " (56 +/-10%); LMS 0.5:";
    for (double m : large) {
        ok = ok && std::abs(m - 5.0) <= 1.0;
        detail += " " + fmt(m);
    }
    detail += " (5 +/-1)";
    return {ok, detail};
}

Outcome retrodiction_containment() {
    const auto records = fixture_records();
    int seeds_ok = 0;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ctf::RetroConfig config;
        config.seed = seed;
        const auto report = ctf::retrodict(records, config, 4);
        const bool all = report.contained() == report.total() && report.total() == 24;
        seeds_ok += all ? 1 : 0;
        detail += (seed > 1 ? " " : "") + std::to_string(report.contained());
    }
    return {seeds_ok >= 9, std::to_string(seeds_ok) + "/10 seeds contain all 24 cells (per seed: " + detail + ")"};
}

Outcome anchor_2024() {
    const auto s = baseline_summary();
    const auto p50 = s.absolute.triple(2024, 1e25).p50;
    return {std::abs(p50 - 23) <= 4, "p50(>1e25, 2024) = " + std::to_string(p50) + " (23 +/-4)"};
}

Outcome baseline_band() {
    const auto s = baseline_summary();
    const auto a = s.absolute.triple(2028, 1e25).p50;
    const auto b = s.absolute.triple(2028, 1e26).p50;
    const bool ok = a >= 103 && a <= 306 && b >= 45 && b <= 148;
    return {ok, "p50 2028 >1e25 = " + std::to_string(a) + " in [103, 306]; >1e26 = " + std::to_string(b) +
                    " in [45, 148]"};
}

Outcome superlinearity() {
    const auto s = baseline_summary();
    std::vector<double> p50;
    for (int y = 2024; y <= 2028; ++y) p50.push_back(static_cast<double>(s.absolute.triple(y, 1e25).p50));
    bool ok = true;
    std::string detail = "increments";
    double prev_inc = -1.0, prev_factor = 1e300;
    std::string factors = "; factors";
    for (std::size_t i = 1; i < p50.size(); ++i) {
        const double inc = p50[i] - p50[i - 1];
        const double factor = p50[i] / p50[i - 1];
        ok = ok && inc > prev_inc && factor < prev_factor;
        prev_inc = inc;
        prev_factor = factor;
        detail += " " + fmt(inc);
        factors += " " + fmt(factor);
    }
    return {ok, detail + factors};
}

Outcome frontier_stability() {
    const auto s = baseline_summary();
    std::int64_t lo = INT64_MAX, hi = 0;
    bool in_band = true;
    std::string detail = "p50 delta 1.0:";
    for (int y = 2025; y <= 2028; ++y) {
        const auto v = s.frontier.triple(y, 1.0).p50;
        in_band = in_band && v >= 7 && v <= 35;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        detail += " " + std::to_string(v);
    }
    const bool stable = lo > 0 && static_cast<double>(hi) <= 1.5 * static_cast<double>(lo);
    return {in_band && stable, detail + " (band [7, 35], max/min " + fmt(lo > 0 ? double(hi) / double(lo) : 0.0) +
                                   " <= 1.5)"};
}

Outcome sampler_statistics() {
    ctf::GrowthSpec growth;
    auto gs = ctf::make_stream(2024, 0, 0, ctf::Purpose::growth);
    double sum = 0.0, sum2 = 0.0;
    constexpr int kGrowthDraws = 100000;
    for (int i = 0; i < kGrowthDraws; ++i) {
        const double g = ctf::draw_growth(growth, gs);
        sum += g;
        sum2 += g * g;
    }
    const double mean = sum / kGrowthDraws;
    const double sd = std::sqrt(sum2 / kGrowthDraws - mean * mean);

    ctf::LmsSpec lms;
    auto ls = ctf::make_stream(2024, 0, 0, ctf::Purpose::lms);
    constexpr int kLmsDraws = 1000000;
    std::vector<double> draws(kLmsDraws);
    for (auto& d : draws) d = ctf::draw_lms(lms, 2030, ls);
    std::nth_element(draws.begin(), draws.begin() + kLmsDraws / 2, draws.end());
    const double median = draws[kLmsDraws / 2];

    const bool ok = std::abs(mean - 4.125) <= 0.01 && std::abs(sd - 0.50) <= 0.01 && std::abs(median - 0.158) <= 0.002;
    char buf[160];
    std::snprintf(buf, sizeof buf, "growth mean %.4f sd %.4f; LMS median %.4f", mean, sd, median);
    return {ok, buf};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "ctf_acceptance_determinism";
    fs::remove_all(root);
    const std::array<std::string, 3> files{"summary_absolute.csv", "summary_frontier.csv", "summary.json"};
    std::vector<std::string> reference;
    int runs = 0, identical = 0;
    std::ostringstream sink;
    for (int rep = 0; rep < 2; ++rep) {
        for (unsigned workers : {1u, 8u}) {
            ctf::CommandOptions o;
            o.command = "forecast";
            o.seed = 42;
            o.workers = workers;
            o.out_dir = root / ("run" + std::to_string(runs));
            if (ctf::run_command(o, sink, sink) != 0) return {false, "forecast command failed: " + sink.str()};
            std::vector<std::string> got;
            for (const auto& f : files) got.push_back(slurp(o.out_dir / f));
            if (reference.empty()) reference = got;
            identical += got == reference ? 1 : 0;
            ++runs;
        }
    }
    fs::remove_all(root);
    return {identical == runs, std::to_string(identical) + "/" + std::to_string(runs) +
                                   " runs byte-identical (1 and 8 workers, twice each)"};
}

Outcome fit_recovery() {
    double worst = 0.0;
    for (double k : {0.5, 0.9, 1.0, 1.1, 1.5}) {
        std::vector<ctf::CdfPoint> points;
        for (int j = 40; j >= 0; --j) {
            const double m = std::pow(10.0, -0.1 * j);
            points.push_back({m, std::pow(m, k)});
        }
        worst = std::max(worst, std::abs(ctf::fit_allocation_gradient(points).k - k));
    }
    const auto records = fixture_records();
    bool fixture_ok = true;
    std::string ks;
    for (int year = 2017; year <= 2023; ++year) {
        std::vector<double> computes;
        for (const auto& r : ctf::filter_records(records, year, year, true)) computes.push_back(r.training_compute);
        const double k = ctf::fit_allocation_gradient(ctf::empirical_cdf(computes), year).k;
        fixture_ok = fixture_ok && k >= 0.85 && k <= 1.15;
        ks += " " + fmt(k);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "synthetic max |dk| = %.2e;", worst);
    return {worst <= 1e-9 && fixture_ok, std::string(buf) + " fixture k 2017-2023:" + ks};
}

Outcome sweep_ordering() {
    auto p50 = [](const std::string& preset) { return baseline_summary(preset).absolute.triple(2028, 1e25).p50; };
    const auto g1 = p50("growth-0.9-0.1");
    const auto g2 = p50("growth-0.33-0.66");
    const auto g3 = p50("growth-0.5-0.5");
    const auto base = p50("baseline");
    const auto low_k = p50("k-0.5-0.7");
    const bool ok = g1 < g2 && g2 < g3 && low_k > base;
    return {ok, "growth presets " + std::to_string(g1) + " < " + std::to_string(g2) + " < " + std::to_string(g3) +
                    "; k-0.5-0.7 " + std::to_string(low_k) + " > baseline " + std::to_string(base)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "allocation-table oracle", 1.0, allocation_tables},
        {2, "2023 allocation table reproduction", 1.0, table_one},
        {3, "toy per-bin count equivalence", 10.0, toy_equivalence},
        {4, "retrodiction containment", 120.0, retrodiction_containment},
        {5, "2024 anchor", 30.0, anchor_2024},
        {6, "baseline band", 30.0, baseline_band},
        {7, "superlinearity", 30.0, superlinearity},
        {8, "frontier stability", 30.0, frontier_stability},
        {9, "growth and LMS sampler statistics", 30.0, sampler_statistics},
        {10, "determinism and parallelism invariance", 120.0, determinism},
        {11, "fit recovery", 30.0, fit_recovery},
        {12, "scenario sweep ordering", 60.0, sweep_ordering},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool pass = out.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("[%s] %2d %s: %s (%.2fs, budget %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    out.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", OVER BUDGET");
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
