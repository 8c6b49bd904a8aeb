// SPDX-License-Identifier: Apache-2.0
//
// Notable-models dataset: parsing, filtering and observed historical
// statistics (yearly totals, frontier models, threshold counts).
//
// File format (UTF-8, comma-delimited):
//
//   name,release_date,training_compute_flop,excluded
//   GPT-3 175B (davinci),2020-05-28,3.14e23,0
//
// Names containing commas may be double-quoted. An empty compute field marks
// a record without a compute estimate; such rows are skipped and counted.
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctf/count_table.hpp"

namespace ctf {

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    /// Parses YYYY-MM-DD with calendar validation. Throws DatasetError.
    static Date parse(const std::string& text);
    auto operator<=>(const Date&) const = default;
};

struct ModelRecord {
    std::string name;
    Date release_date;
    double training_compute = 0.0;  // FLOP, > 0 and finite
    bool excluded = false;          // outlier flag (e.g. AlphaGo family)

    int year() const { return release_date.year; }
};

struct RowError {
    std::size_t line = 0;  // 1-based line number in the input
    std::string message;
};

struct ParseResult {
    std::vector<ModelRecord> records;
    std::vector<RowError> rejected;
    std::size_t missing_compute = 0;
};

/// Parses the delimited dataset. Malformed header or an empty input is a hard
/// error (DatasetError); bad rows are collected in `rejected`.
ParseResult parse_dataset(std::istream& in);
ParseResult load_dataset(const std::filesystem::path& path);

/// Records released within [year_start, year_end]; excluded-flagged records
/// are dropped when `apply_exclusions` is set. Throws std::invalid_argument
/// for an inverted range.
std::vector<ModelRecord> filter_records(std::span<const ModelRecord> records, int year_start, int year_end,
                                        bool apply_exclusions);

struct YearStats {
    int year = 0;
    double total_compute = 0.0;
    double largest_model = 0.0;
    std::size_t count = 0;

    /// Largest-model share: largest / total.
    double largest_share() const { return largest_model / total_compute; }
};

std::map<int, YearStats> year_stats(std::span<const ModelRecord> records);

/// Counts of records with compute strictly greater than each threshold.
/// With `cumulative`, counts accumulate from the first requested year.
CountTable observed_threshold_counts(std::span<const ModelRecord> records, std::span<const double> thresholds,
                                     std::span<const int> years, bool cumulative);

/// Per-year counts of records within `delta` orders of magnitude of the
/// frontier, where the frontier is the largest record released up to and
/// including that year. Membership is `compute >= F * 10^-delta`.
CountTable observed_frontier_counts(std::span<const ModelRecord> records, std::span<const double> deltas,
                                    std::span<const int> years);

/// Largest compute among records released strictly before `year` (0 if none).
double frontier_before(std::span<const ModelRecord> records, int year);

}  // namespace ctf
