// SPDX-License-Identifier: Apache-2.0
#include "ctf/report.hpp"

#include <json.hpp>
#include <sstream>

#include "ctf/numeric.hpp"

namespace ctf {
namespace {

std::string key_text(double key, bool flop) { return flop ? format_flop(key) : format_exact(key); }

std::string render_summary(const SummaryTable& table, const RunMetadata& meta, const char* key_column, bool flop) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "year," << key_column;
    for (int p : table.percentiles) out << ",p" << p;
    out << "\n";
    for (std::size_t yi = 0; yi < table.years.size(); ++yi) {
        for (std::size_t ki = 0; ki < table.keys.size(); ++ki) {
            out << table.years[yi] << "," << key_text(table.keys[ki], flop);
            for (std::size_t pi = 0; pi < table.percentiles.size(); ++pi) out << "," << table.value(yi, ki, pi);
            out << "\n";
        }
    }
    return out.str();
}

nlohmann::ordered_json summary_rows(const SummaryTable& table, const char* key_column, bool flop) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t yi = 0; yi < table.years.size(); ++yi) {
        for (std::size_t ki = 0; ki < table.keys.size(); ++ki) {
            nlohmann::ordered_json row;
            row["year"] = table.years[yi];
            row[key_column] = key_text(table.keys[ki], flop);
            for (std::size_t pi = 0; pi < table.percentiles.size(); ++pi)
                row["p" + std::to_string(table.percentiles[pi])] = table.value(yi, ki, pi);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void render_cells(std::ostringstream& out, const std::vector<RetroCell>& cells, const char* table, bool flop) {
    for (const auto& c : cells)
        out << table << "," << c.year << "," << key_text(c.key, flop) << "," << c.observed << "," << c.interval.p5
            << "," << c.interval.p50 << "," << c.interval.p95 << "," << (c.contained ? "true" : "false") << "\n";
}

}  // namespace

std::string metadata_header(const RunMetadata& meta) {
    std::ostringstream out;
    out << "# config_hash=" << meta.config_hash << "\n";
    if (meta.generator == "none") {
        out << "# seed=none\n# generator=none\n";
        return out.str();
    }
    out << "# seed=" << meta.seed << "\n";
    out << "# generator=" << meta.generator << "\n";
    out << "# trials=" << meta.trials << "\n";
    return out.str();
}

std::string render_absolute_csv(const SummaryTable& table, const RunMetadata& meta) {
    return render_summary(table, meta, "threshold_flop", true);
}

std::string render_frontier_csv(const SummaryTable& table, const RunMetadata& meta) {
    return render_summary(table, meta, "delta_oom", false);
}

std::string render_summary_json(const ForecastSummary& summary) {
    nlohmann::ordered_json doc;
    doc["config_hash"] = summary.meta.config_hash;
    doc["seed"] = summary.meta.seed;
    doc["generator"] = summary.meta.generator;
    doc["trials"] = summary.meta.trials;
    doc["absolute"] = summary_rows(summary.absolute, "threshold_flop", true);
    doc["frontier"] = summary_rows(summary.frontier, "delta_oom", false);
    return doc.dump(2) + "\n";
}

std::string containment_line(const RetrodictionReport& report) {
    return "contained: " + std::to_string(report.contained()) + "/" + std::to_string(report.total()) + " cells";
}

std::string render_retrodiction_csv(const RetrodictionReport& report, const RunMetadata& meta) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "table,year,key,observed,p5,p50,p95,contained\n";
    render_cells(out, report.absolute, "absolute", true);
    render_cells(out, report.frontier, "frontier", false);
    out << "# " << containment_line(report) << "\n";
    return out.str();
}

std::string render_fit_csv(std::span<const AllocationFit> fits, const RunMetadata& meta) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "year,k,residual_rms,num_points\n";
    for (const auto& f : fits)
        out << f.year << "," << format_sig(f.k, 6) << "," << format_sig(f.residual_rms, 3) << "," << f.points.size()
            << "\n";
    return out.str();
}

std::string render_fit_points_csv(std::span<const AllocationFit> fits, const RunMetadata& meta) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "year,normalized_size,cumulative_fraction\n";
    for (const auto& f : fits)
        for (const auto& p : f.points)
            out << f.year << "," << format_sig(p.normalized_size, 6) << "," << format_sig(p.cumulative_fraction, 6)
                << "\n";
    return out.str();
}

std::string render_observed_csv(const CountTable& table, bool thresholds, const RunMetadata& meta) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "year," << (thresholds ? "threshold_flop" : "delta_oom") << ",count\n";
    for (std::size_t yi = 0; yi < table.years.size(); ++yi)
        for (std::size_t ki = 0; ki < table.keys.size(); ++ki)
            out << table.years[yi] << "," << key_text(table.keys[ki], thresholds) << "," << table.at(yi, ki) << "\n";
    return out.str();
}

std::string render_year_stats_csv(const std::map<int, YearStats>& stats, const RunMetadata& meta) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "year,models,total_compute_flop,largest_model_flop,largest_share\n";
    for (const auto& [year, s] : stats)
        out << year << "," << s.count << "," << format_flop(s.total_compute) << "," << format_flop(s.largest_model)
            << "," << format_sig(s.largest_share(), 3) << "\n";
    return out.str();
}

std::string render_trace_csv(std::span<const TrialResult> trials, const RunMetadata& meta) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "trial,year,growth,training_compute_flop,lms,k,largest_model_flop,models\n";
    for (const auto& t : trials)
        for (const auto& y : t.years)
            out << t.trial << "," << y.year << "," << format_exact(y.growth) << ","
                << format_flop(y.training_compute) << "," << format_exact(y.lms) << "," << format_exact(y.gradient)
                << "," << format_flop(y.largest_model) << "," << y.model_sizes.size() << "\n";
    return out.str();
}

std::string render_trace_models_csv(std::span<const TrialResult> trials, const RunMetadata& meta) {
    std::ostringstream out;
    out << metadata_header(meta);
    out << "trial,year,size_flop\n";
    for (const auto& t : trials)
        for (const auto& y : t.years)
            for (double s : y.model_sizes) out << t.trial << "," << y.year << "," << format_flop(s) << "\n";
    return out.str();
}

std::string render_sweep_comparison_csv(std::span<const SweepEntry> entries) {
    std::ostringstream out;
    for (const auto& e : entries)
        out << "# preset=" << e.preset << " config_hash=" << e.summary.meta.config_hash
            << " seed=" << e.summary.meta.seed << " trials=" << e.summary.meta.trials << "\n";
    if (!entries.empty()) out << "# generator=" << entries.front().summary.meta.generator << "\n";
    out << "preset,table,year,key,p5,p50,p95\n";
    for (const auto& e : entries) {
        auto rows = [&](const SummaryTable& t, const char* name, bool flop) {
            for (std::size_t yi = 0; yi < t.years.size(); ++yi)
                for (std::size_t ki = 0; ki < t.keys.size(); ++ki) {
                    const auto tr = t.triple(t.years[yi], t.keys[ki]);
                    out << e.preset << "," << name << "," << t.years[yi] << "," << key_text(t.keys[ki], flop) << ","
                        << tr.p5 << "," << tr.p50 << "," << tr.p95 << "\n";
                }
        };
        rows(e.summary.absolute, "absolute", true);
        rows(e.summary.frontier, "frontier", false);
    }
    return out.str();
}

}  // namespace ctf
