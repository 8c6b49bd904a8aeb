// SPDX-License-Identifier: Apache-2.0
//
// Subcommands behind the command-line tool. Each writes its artifacts into
// `out_dir` and returns a process exit status.
//
//   fit        per-year allocation gradient k and CDF points   fit.csv, fit_points.csv
//   forecast   Monte Carlo threshold counts                    summary_absolute.csv, summary_frontier.csv, summary.json
//   retrodict  historical containment check                    retrodiction.csv
//   sweep      forecast for each preset                        <preset>/..., sweep_comparison.csv
//   observed   counts and yearly statistics from the dataset   observed_absolute.csv, observed_frontier.csv, year_stats.csv
//
// Every command also writes run_meta.txt.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ctf {

struct CommandOptions {
    std::string command;
    std::optional<std::filesystem::path> config_path;
    std::string preset = "baseline";
    std::vector<std::string> sweep_presets;  // names or `prefix*` patterns
    std::optional<std::uint64_t> seed;       // generated and reported when absent
    std::optional<std::uint64_t> trials;
    std::optional<std::string> years;       // "A..B" or a list
    std::optional<std::string> thresholds;  // comma list of FLOP
    std::optional<std::string> deltas;      // comma list of OOM
    std::filesystem::path out_dir = "out";
    bool trace = false;
    unsigned workers = 1;
    std::optional<std::filesystem::path> dataset;
    std::string command_line;  // recorded in run_meta.txt
};

/// Returns 0 on success. Errors are reported on `err` with context and give a
/// nonzero status.
int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace ctf
