// SPDX-License-Identifier: Apache-2.0
#include "ctf/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "ctf/allocation.hpp"
#include "ctf/config_io.hpp"
#include "ctf/dataset.hpp"
#include "ctf/engine.hpp"
#include "ctf/metrics.hpp"
#include "ctf/numeric.hpp"
#include "ctf/report.hpp"
#include "ctf/retrodiction.hpp"
#include "ctf/rng.hpp"

namespace ctf {
namespace {

namespace fs = std::filesystem;

class CommandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw CommandError("cannot create output directory '" + dir.string() + "'" +
                           (ec ? ": " + ec.message() : std::string()));
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CommandError("cannot write '" + path.string() + "'");
    out << text;
    if (!out.flush()) throw CommandError("failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CommandError("cannot open '" + path.string() + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::uint64_t generated_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct SeedChoice {
    std::optional<std::uint64_t> value;  // override to apply, if any
    std::string source;
};

SeedChoice choose_seed(const CommandOptions& o) {
    if (o.seed) return {o.seed, "flag"};
    if (o.config_path) {
        // A seed set in the config file wins over generation.
        for (const auto& [k, v] : parse_key_values(read_file(*o.config_path)))
            if (k == "seed") return {std::nullopt, "config"};
    }
    return {generated_seed(), "generated"};
}

KeyValues scenario_overrides(const CommandOptions& o, const SeedChoice& seed) {
    KeyValues kv;
    if (o.years) kv.emplace_back("years", *o.years);
    if (o.thresholds) kv.emplace_back("thresholds", *o.thresholds);
    if (o.deltas) kv.emplace_back("frontier.deltas", *o.deltas);
    if (o.trials) kv.emplace_back("trials", std::to_string(*o.trials));
    if (seed.value) kv.emplace_back("seed", std::to_string(*seed.value));
    return kv;
}

struct Meta {
    std::string subcommand;
    std::string command_line;
    RunMetadata run;
    std::string seed_source;
    unsigned workers = 1;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> extra;
};

std::string render_run_meta(const Meta& m) {
    std::ostringstream out;
    out << "command=" << m.command_line << "\n";
    out << "subcommand=" << m.subcommand << "\n";
    if (m.run.generator == "none") {
        out << "seed=none\n";
    } else {
        out << "seed=" << m.run.seed << "\n";
        out << "seed_source=" << m.seed_source << "\n";
    }
    out << "generator=" << m.run.generator << "\n";
    out << "config_hash=" << m.run.config_hash << "\n";
    out << "trials=" << m.run.trials << "\n";
    out << "workers=" << m.workers << "\n";
    for (const auto& [k, v] : m.extra) out << k << "=" << v << "\n";
    out << "wall_time_s=" << std::fixed << std::setprecision(3) << m.wall_seconds << "\n";
    return out.str();
}

void announce_seed(std::ostream& out, std::uint64_t seed, const std::string& source) {
    if (source == "generated")
        out << "seed: " << seed << " (generated; pass --seed " << seed << " to reproduce)\n";
    else
        out << "seed: " << seed << "\n";
}

ParseResult load_records(const CommandOptions& o, std::ostream& err, std::string& digest) {
    if (!o.dataset) throw CommandError(o.command + ": --dataset is required");
    digest = fnv1a_hex(read_file(*o.dataset));
    auto parsed = load_dataset(*o.dataset);
    for (const auto& r : parsed.rejected)
        err << "warning: " << o.dataset->string() << ":" << r.line << ": " << r.message << "\n";
    if (parsed.missing_compute > 0)
        err << "note: skipped " << parsed.missing_compute << " records without a compute estimate\n";
    return parsed;
}

std::string join_years(const std::vector<int>& years) {
    std::string s;
    for (int y : years) s += (s.empty() ? "" : ",") + std::to_string(y);
    return s;
}

std::string join_numbers(const std::vector<double>& xs) {
    std::string s;
    for (double x : xs) s += (s.empty() ? "" : ",") + format_exact(x);
    return s;
}

RunMetadata deterministic_meta(const std::string& settings) {
    return {fnv1a_hex(settings), 0, "none", 0};
}

ForecastSummary forecast_into(const ScenarioConfig& config, const fs::path& dir, const CommandOptions& o) {
    ensure_dir(dir);
    const std::string hash = config_hash(config);
    RunMetadata meta{hash, config.seed, kGeneratorId, config.trials};
    ForecastSummary summary;
    if (o.trace) {
        const auto trials = run_forecast(config, o.workers);
        std::vector<TrialTables> tables;
        tables.reserve(trials.size());
        for (const auto& t : trials) tables.push_back(trial_tables(t, config));
        summary = summarize_forecast(config, tables, hash);
        write_file(dir / "trace.csv", render_trace_csv(trials, meta));
        write_file(dir / "trace_models.csv", render_trace_models_csv(trials, meta));
    } else {
        summary = summarize_forecast(config, forecast_tables(config, o.workers), hash);
    }
    write_file(dir / "summary_absolute.csv", render_absolute_csv(summary.absolute, summary.meta));
    write_file(dir / "summary_frontier.csv", render_frontier_csv(summary.frontier, summary.meta));
    write_file(dir / "summary.json", render_summary_json(summary));
    write_file(dir / "config.txt", "# config_hash=" + hash + "\n" + to_key_value_text(config));
    return summary;
}

void print_summary(std::ostream& out, const ForecastSummary& s) {
    out << "threshold  year  p5  p50  p95\n";
    for (std::size_t ki = 0; ki < s.absolute.keys.size(); ++ki)
        for (int year : s.absolute.years) {
            const auto t = s.absolute.triple(year, s.absolute.keys[ki]);
            out << ">" << format_flop(s.absolute.keys[ki]) << "  " << year << "  " << t.p5 << "  " << t.p50 << "  "
                << t.p95 << "\n";
        }
}

int cmd_forecast(const CommandOptions& o, Meta& meta, std::ostream& out) {
    const auto seed = choose_seed(o);
    const auto config = load_config(o.config_path, o.preset, scenario_overrides(o, seed));
    announce_seed(out, config.seed, seed.source);
    const auto summary = forecast_into(config, o.out_dir, o);
    print_summary(out, summary);
    meta.run = summary.meta;
    meta.seed_source = seed.source;
    meta.extra.emplace_back("preset", o.preset);
    return 0;
}

int cmd_sweep(const CommandOptions& o, Meta& meta, std::ostream& out) {
    if (o.sweep_presets.empty()) throw CommandError("sweep: --presets is required");
    std::vector<std::string> names;
    for (const auto& pattern : o.sweep_presets)
        for (auto& n : match_presets(pattern)) names.push_back(std::move(n));
    const auto seed = choose_seed(o);
    const auto overrides = scenario_overrides(o, seed);

    std::vector<SweepEntry> entries;
    std::string hashes;
    for (const auto& name : names) {
        const auto config = load_config(o.config_path, name, overrides);
        if (entries.empty()) announce_seed(out, config.seed, seed.source);
        out << "preset " << name << "\n";
        const auto summary = forecast_into(config, o.out_dir / name, o);
        print_summary(out, summary);
        hashes += name + ":" + summary.meta.config_hash + "\n";
        entries.push_back({name, summary});
    }
    ensure_dir(o.out_dir);
    write_file(o.out_dir / "sweep_comparison.csv", render_sweep_comparison_csv(entries));
    meta.run = {fnv1a_hex(hashes), entries.front().summary.meta.seed, kGeneratorId, entries.front().summary.meta.trials};
    meta.seed_source = seed.source;
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ",") + n;
    meta.extra.emplace_back("presets", list);
    return 0;
}

RetroConfig retro_config(const CommandOptions& o, const SeedChoice& seed) {
    RetroConfig c;
    if (o.years) c.years = parse_years(*o.years);
    if (o.thresholds) c.thresholds = parse_number_list(*o.thresholds);
    if (o.deltas) c.frontier_deltas = parse_number_list(*o.deltas);
    if (o.trials) c.trials = *o.trials;
    if (seed.value) c.seed = *seed.value;
    c.validate();
    return c;
}

std::string retro_text(const RetroConfig& c, const std::string& digest) {
    std::ostringstream s;
    s << "years=" << join_years(c.years) << "\nlms.shape="
      << (c.lms.shape == LmsShape::uniform ? "uniform" : "lognormal") << "\nlms.lo=" << format_exact(c.lms.lo)
      << "\nlms.hi=" << format_exact(c.lms.hi) << "\nk.range=" << format_exact(c.k_range.first) << ","
      << format_exact(c.k_range.second) << "\nbins=" << c.num_bins << "\nthresholds=" << join_numbers(c.thresholds)
      << "\nfrontier.deltas=" << join_numbers(c.frontier_deltas) << "\ntrials=" << c.trials << "\nseed=" << c.seed
      << "\ndataset=" << digest << "\n";
    return s.str();
}

int cmd_retrodict(const CommandOptions& o, Meta& meta, std::ostream& out, std::ostream& err) {
    if (o.config_path) throw CommandError("retrodict: --config is not supported; use the individual flags");
    std::string digest;
    const auto parsed = load_records(o, err, digest);
    const auto seed = choose_seed(o);
    const auto config = retro_config(o, seed);
    announce_seed(out, config.seed, seed.source);
    const auto report = retrodict(parsed.records, config, o.workers);
    RunMetadata run{fnv1a_hex(retro_text(config, digest)), config.seed, kGeneratorId, config.trials};
    ensure_dir(o.out_dir);
    write_file(o.out_dir / "retrodiction.csv", render_retrodiction_csv(report, run));
    out << "table     year  key      observed  (p5, p50, p95)  contained\n";
    auto show = [&](const std::vector<RetroCell>& cells, const char* name, bool flop) {
        for (const auto& c : cells)
            out << name << "  " << c.year << "  " << (flop ? format_flop(c.key) : format_exact(c.key)) << "  "
                << c.observed << "  (" << c.interval.p5 << ", " << c.interval.p50 << ", " << c.interval.p95 << ")  "
                << (c.contained ? "yes" : "NO") << "\n";
    };
    show(report.absolute, "absolute", true);
    show(report.frontier, "frontier", false);
    out << containment_line(report) << "\n";
    meta.run = run;
    meta.seed_source = seed.source;
    meta.extra.emplace_back("contained", std::to_string(report.contained()) + "/" + std::to_string(report.total()));
    return 0;
}

int cmd_fit(const CommandOptions& o, Meta& meta, std::ostream& out, std::ostream& err) {
    if (o.thresholds || o.deltas) throw CommandError("fit: --thresholds and --deltas do not apply");
    std::string digest;
    const auto parsed = load_records(o, err, digest);
    const auto years = parse_years(o.years.value_or("2017..2023"));
    std::vector<AllocationFit> fits;
    for (int year : years) {
        std::vector<double> computes;
        for (const auto& r : filter_records(parsed.records, year, year, true)) computes.push_back(r.training_compute);
        try {
            const auto points = empirical_cdf(computes);
            fits.push_back(fit_allocation_gradient(points, year));
        } catch (const FitError& e) {
            throw CommandError("fit: year " + std::to_string(year) + ": " + e.what());
        }
    }
    meta.run = deterministic_meta("command=fit\nyears=" + join_years(years) + "\ndataset=" + digest + "\n");
    ensure_dir(o.out_dir);
    write_file(o.out_dir / "fit.csv", render_fit_csv(fits, meta.run));
    write_file(o.out_dir / "fit_points.csv", render_fit_points_csv(fits, meta.run));
    out << "year  k  residual_rms  points\n";
    for (const auto& f : fits)
        out << f.year << "  " << format_sig(f.k, 4) << "  " << format_sig(f.residual_rms, 3) << "  " << f.points.size()
            << "\n";
    return 0;
}

int cmd_observed(const CommandOptions& o, Meta& meta, std::ostream& out, std::ostream& err) {
    std::string digest;
    const auto parsed = load_records(o, err, digest);
    const auto years = parse_years(o.years.value_or("2020..2023"));
    const auto thresholds = parse_number_list(o.thresholds.value_or("1e23,1e24,1e25"));
    const auto deltas = parse_number_list(o.deltas.value_or("0.5,1,1.5"));
    std::vector<ModelRecord> kept;
    for (const auto& r : parsed.records)
        if (!r.excluded) kept.push_back(r);

    const auto absolute = observed_threshold_counts(kept, thresholds, years, true);
    const auto frontier = observed_frontier_counts(kept, deltas, years);
    const auto stats = year_stats(filter_records(kept, years.front(), years.back(), true));
    meta.run = deterministic_meta("command=observed\nyears=" + join_years(years) + "\nthresholds=" +
                                  join_numbers(thresholds) + "\nfrontier.deltas=" + join_numbers(deltas) +
                                  "\ndataset=" + digest + "\n");
    ensure_dir(o.out_dir);
    write_file(o.out_dir / "observed_absolute.csv", render_observed_csv(absolute, true, meta.run));
    write_file(o.out_dir / "observed_frontier.csv", render_observed_csv(frontier, false, meta.run));
    write_file(o.out_dir / "year_stats.csv", render_year_stats_csv(stats, meta.run));

    for (std::size_t ki = 0; ki < thresholds.size(); ++ki) {
        out << ">" << format_flop(thresholds[ki]);
        for (std::size_t yi = 0; yi < years.size(); ++yi) out << "  " << years[yi] << ":" << absolute.at(yi, ki);
        out << "\n";
    }
    for (std::size_t ki = 0; ki < deltas.size(); ++ki) {
        out << "within " << format_exact(deltas[ki]) << " OOM";
        for (std::size_t yi = 0; yi < years.size(); ++yi) out << "  " << years[yi] << ":" << frontier.at(yi, ki);
        out << "\n";
    }
    return 0;
}

}  // namespace

int run_command(const CommandOptions& o, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    Meta meta;
    meta.subcommand = o.command;
    meta.command_line = o.command_line.empty() ? o.command : o.command_line;
    meta.workers = o.workers;
    try {
        int status = 0;
        if (o.command == "forecast")
            status = cmd_forecast(o, meta, out);
        else if (o.command == "sweep")
            status = cmd_sweep(o, meta, out);
        else if (o.command == "retrodict")
            status = cmd_retrodict(o, meta, out, err);
        else if (o.command == "fit")
            status = cmd_fit(o, meta, out, err);
        else if (o.command == "observed")
            status = cmd_observed(o, meta, out, err);
        else
            throw CommandError("unknown command '" + o.command + "'");
        meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_file(o.out_dir / "run_meta.txt", render_run_meta(meta));
        out << "wrote " << o.out_dir.string() << "\n";
        return status;
    } catch (const std::exception& e) {
        err << "error: " << o.command << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ctf
