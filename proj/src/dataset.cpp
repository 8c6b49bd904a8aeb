// SPDX-License-Identifier: Apache-2.0
#include "ctf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

#include "ctf/numeric.hpp"

namespace ctf {
namespace {

constexpr const char* kHeader = "name,release_date,training_compute_flop,excluded";

std::string trim(std::string s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.back())) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && ws(s[b])) ++b;
    return s.substr(b);
}

// Splits one CSV line, honouring double-quoted fields with "" escapes.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) throw DatasetError("unterminated quoted field");
    out.push_back(cur);
    return out;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

}  // namespace

Date Date::parse(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw DatasetError("invalid date '" + text + "' (expected YYYY-MM-DD)");
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (text[i] < '0' || text[i] > '9') throw DatasetError("invalid date '" + text + "'");
    Date d;
    d.year = std::stoi(text.substr(0, 4));
    d.month = std::stoi(text.substr(5, 2));
    d.day = std::stoi(text.substr(8, 2));
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (d.month < 1 || d.month > 12) throw DatasetError("invalid month in date '" + text + "'");
    const int max_day = kDays[d.month - 1] + ((d.month == 2 && is_leap(d.year)) ? 1 : 0);
    if (d.day < 1 || d.day > max_day) throw DatasetError("invalid day in date '" + text + "'");
    return d;
}

ParseResult parse_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DatasetError("empty dataset file");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);
    if (trim(line) != kHeader)
        throw DatasetError("malformed header: expected '" + std::string(kHeader) + "', got '" + trim(line) + "'");

    ParseResult result;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            const auto fields = split_csv(line);
            if (fields.size() != 4)
                throw DatasetError("expected 4 fields, got " + std::to_string(fields.size()));
            ModelRecord rec;
            rec.name = trim(fields[0]);
            if (rec.name.empty()) throw DatasetError("empty model name");
            rec.release_date = Date::parse(fields[1]);

            const std::string compute = trim(fields[2]);
            if (compute.empty()) {
                ++result.missing_compute;
                continue;
            }
            try {
                rec.training_compute = parse_double(compute);
            } catch (const std::invalid_argument&) {
                throw DatasetError("non-numeric training compute '" + compute + "'");
            }
            if (!(rec.training_compute > 0.0))
                throw DatasetError("training compute must be positive, got '" + compute + "'");

            const std::string flag = trim(fields[3]);
            if (flag == "0")
                rec.excluded = false;
            else if (flag == "1")
                rec.excluded = true;
            else
                throw DatasetError("excluded flag must be 0 or 1, got '" + flag + "'");
            result.records.push_back(std::move(rec));
        } catch (const DatasetError& e) {
            result.rejected.push_back({line_no, e.what()});
        }
    }
    return result;
}

ParseResult load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open dataset '" + path.string() + "'");
    return parse_dataset(in);
}

std::vector<ModelRecord> filter_records(std::span<const ModelRecord> records, int year_start, int year_end,
                                        bool apply_exclusions) {
    if (year_start > year_end)
        throw std::invalid_argument("filter_records: year_start " + std::to_string(year_start) +
                                    " is after year_end " + std::to_string(year_end));
    std::vector<ModelRecord> out;
    for (const auto& r : records) {
        if (r.year() < year_start || r.year() > year_end) continue;
        if (apply_exclusions && r.excluded) continue;
        out.push_back(r);
    }
    return out;
}

std::map<int, YearStats> year_stats(std::span<const ModelRecord> records) {
    std::map<int, CompensatedSum> sums;
    std::map<int, YearStats> out;
    for (const auto& r : records) {
        auto& s = out[r.year()];
        s.year = r.year();
        s.largest_model = std::max(s.largest_model, r.training_compute);
        ++s.count;
        sums[r.year()].add(r.training_compute);
    }
    for (auto& [year, s] : out) s.total_compute = sums[year].value();
    return out;
}

CountTable observed_threshold_counts(std::span<const ModelRecord> records, std::span<const double> thresholds,
                                     std::span<const int> years, bool cumulative) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 0.0)) throw std::invalid_argument("thresholds must be positive");
        if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
            throw std::invalid_argument("thresholds must be strictly increasing");
    }
    CountTable table({years.begin(), years.end()}, {thresholds.begin(), thresholds.end()});
    for (std::size_t yi = 0; yi < years.size(); ++yi) {
        for (const auto& r : records) {
            if (r.year() != years[yi]) continue;
            for (std::size_t ti = 0; ti < thresholds.size(); ++ti)
                if (r.training_compute > thresholds[ti]) ++table.at(yi, ti);
        }
    }
    if (cumulative) {
        for (std::size_t yi = 1; yi < years.size(); ++yi)
            for (std::size_t ti = 0; ti < thresholds.size(); ++ti) table.at(yi, ti) += table.at(yi - 1, ti);
    }
    return table;
}

double frontier_before(std::span<const ModelRecord> records, int year) {
    double f = 0.0;
    for (const auto& r : records)
        if (r.year() < year) f = std::max(f, r.training_compute);
    return f;
}

CountTable observed_frontier_counts(std::span<const ModelRecord> records, std::span<const double> deltas,
                                    std::span<const int> years) {
    for (double d : deltas)
        if (!(d > 0.0)) throw std::invalid_argument("frontier deltas must be positive");
    CountTable table({years.begin(), years.end()}, {deltas.begin(), deltas.end()});
    for (std::size_t yi = 0; yi < years.size(); ++yi) {
        const int year = years[yi];
        const double frontier = std::max(frontier_before(records, year + 1), 0.0);
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            const double cut = frontier * std::pow(10.0, -deltas[di]);
            for (const auto& r : records)
                if (r.year() == year && r.training_compute >= cut) ++table.at(yi, di);
        }
    }
    return table;
}

}  // namespace ctf
