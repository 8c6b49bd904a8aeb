// SPDX-License-Identifier: Apache-2.0
#include "ctf/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ctf/numeric.hpp"

namespace ctf {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

double number(const std::string& key, const std::string& value) {
    try {
        return parse_double(value);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

long long integer(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v.empty()) throw ConfigError(key + ": expected an integer");
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return out;
}

int year_suffix(const std::string& key, const std::string& prefix) {
    return static_cast<int>(integer(key, key.substr(prefix.size())));
}

DrawMode draw_mode(const std::string& key, const std::string& v) {
    if (v == "per_year") return DrawMode::per_year;
    if (v == "per_trial") return DrawMode::per_trial;
    throw ConfigError(key + ": expected per_year or per_trial, got '" + v + "'");
}

const char* to_string(DrawMode m) { return m == DrawMode::per_year ? "per_year" : "per_trial"; }

template <class T>
std::string join(const std::vector<T>& xs, auto&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out;
}

}  // namespace

std::vector<int> parse_years(const std::string& text) {
    const std::string t = trim(text);
    std::vector<int> out;
    if (auto dots = t.find(".."); dots != std::string::npos) {
        const auto a = integer("years", t.substr(0, dots));
        const auto b = integer("years", t.substr(dots + 2));
        if (a > b) throw ConfigError("years: range '" + t + "' is inverted");
        for (auto y = a; y <= b; ++y) out.push_back(static_cast<int>(y));
        return out;
    }
    for (const auto& part : split(t, ',')) out.push_back(static_cast<int>(integer("years", part)));
    return out;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        if (part.empty()) continue;
        out.push_back(number("list", part));
    }
    return out;
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

void apply_setting(ScenarioConfig& c, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "base_year") {
        c.base_year = static_cast<int>(integer(key, v));
    } else if (key == "base_training_compute") {
        c.base_training_compute = number(key, v);
    } else if (key == "base_share") {
        c.base_share = number(key, v);
    } else if (key == "years") {
        c.years = parse_years(v);
    } else if (starts_with(key, "share.")) {
        c.share_schedule[year_suffix(key, "share.")] = number(key, v);
    } else if (key == "growth.rates") {
        c.growth.rates.clear();
        for (const auto& pair : split(v, ',')) {
            const auto colon = pair.find(':');
            if (colon == std::string::npos) throw ConfigError(key + ": expected multiplier:weight pairs");
            c.growth.rates.push_back({number(key, pair.substr(0, colon)), number(key, pair.substr(colon + 1))});
        }
    } else if (key == "growth.noise_sd") {
        c.growth.noise_sd = number(key, v);
    } else if (key == "growth.noise_mode") {
        c.growth_noise = draw_mode(key, v);
    } else if (key == "lms.shape") {
        if (v == "lognormal")
            c.lms.shape = LmsShape::lognormal;
        else if (v == "uniform")
            c.lms.shape = LmsShape::uniform;
        else
            throw ConfigError(key + ": expected lognormal or uniform, got '" + v + "'");
    } else if (key == "lms.lo") {
        c.lms.lo = number(key, v);
    } else if (key == "lms.hi") {
        c.lms.hi = number(key, v);
    } else if (starts_with(key, "lms.pin.")) {
        const int year = year_suffix(key, "lms.pin.");
        if (v == "none")
            c.lms.pinned.erase(year);
        else
            c.lms.pinned[year] = number(key, v);
    } else if (key == "k.range") {
        const auto xs = parse_number_list(v);
        if (xs.size() != 2) throw ConfigError(key + ": expected 'lo, hi'");
        c.k_range = {xs[0], xs[1]};
    } else if (key == "k.mode") {
        c.gradient_mode = draw_mode(key, v);
    } else if (key == "bins") {
        c.num_bins = static_cast<int>(integer(key, v));
    } else if (key == "thresholds") {
        c.thresholds = parse_number_list(v);
    } else if (key == "frontier.deltas") {
        c.frontier_deltas = parse_number_list(v);
    } else if (key == "frontier.mode") {
        if (v == "to_date")
            c.frontier_mode = FrontierMode::to_date;
        else if (v == "year_largest")
            c.frontier_mode = FrontierMode::year_largest;
        else
            throw ConfigError(key + ": expected to_date or year_largest, got '" + v + "'");
    } else if (key == "frontier.initial") {
        c.initial_frontier = number(key, v);
    } else if (key == "baseline") {
        if (v != "none") throw ConfigError(key + ": only 'none' is accepted; use baseline.<threshold>");
        c.baseline_counts.clear();
    } else if (starts_with(key, "baseline.")) {
        c.baseline_counts[number(key, key.substr(9))] = integer(key, v);
    } else if (key == "trials") {
        const auto t = integer(key, v);
        if (t < 1) throw ConfigError("trials: must be at least 1");
        c.trials = static_cast<std::uint64_t>(t);
    } else if (key == "seed") {
        const std::string s = trim(v);
        std::size_t pos = 0;
        try {
            c.seed = std::stoull(s, &pos, 0);
        } catch (const std::exception&) {
            throw ConfigError("seed: expected an unsigned integer, got '" + s + "'");
        }
        if (pos != s.size() || s.starts_with('-')) throw ConfigError("seed: expected an unsigned integer, got '" + s + "'");
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

std::string to_key_value_text(const ScenarioConfig& c) {
    std::ostringstream out;
    auto num = [](double x) { return format_exact(x); };
    out << "base_year = " << c.base_year << "\n";
    out << "base_training_compute = " << num(c.base_training_compute) << "\n";
    out << "base_share = " << num(c.base_share) << "\n";
    out << "years = " << join(c.years, [](int y) { return std::to_string(y); }) << "\n";
    for (const auto& [year, share] : c.share_schedule) out << "share." << year << " = " << num(share) << "\n";
    out << "growth.rates = "
        << join(c.growth.rates, [&](const GrowthRate& r) { return num(r.multiplier) + ":" + num(r.weight); }) << "\n";
    out << "growth.noise_sd = " << num(c.growth.noise_sd) << "\n";
    out << "growth.noise_mode = " << to_string(c.growth_noise) << "\n";
    out << "lms.shape = " << (c.lms.shape == LmsShape::lognormal ? "lognormal" : "uniform") << "\n";
    out << "lms.lo = " << num(c.lms.lo) << "\n";
    out << "lms.hi = " << num(c.lms.hi) << "\n";
    for (const auto& [year, flop] : c.lms.pinned) out << "lms.pin." << year << " = " << num(flop) << "\n";
    out << "k.range = " << num(c.k_range.first) << ", " << num(c.k_range.second) << "\n";
    out << "k.mode = " << to_string(c.gradient_mode) << "\n";
    out << "bins = " << c.num_bins << "\n";
    out << "thresholds = " << join(c.thresholds, num) << "\n";
    out << "frontier.deltas = " << join(c.frontier_deltas, num) << "\n";
    out << "frontier.mode = " << (c.frontier_mode == FrontierMode::to_date ? "to_date" : "year_largest") << "\n";
    out << "frontier.initial = " << num(c.initial_frontier) << "\n";
    for (const auto& [t, n] : c.baseline_counts) out << "baseline." << num(t) << " = " << n << "\n";
    out << "trials = " << c.trials << "\n";
    out << "seed = " << c.seed << "\n";
    return out.str();
}

std::string config_hash(const ScenarioConfig& config) { return fnv1a_hex(to_key_value_text(config)); }

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> kPresets = {
        {"baseline", "lognormal LMS 2025-2028, k ~ U[0.9, 1.1], growth weights 0.25/0.75", {}},
        {"uniform-lms", "LMS ~ Uniform(0.05, 0.5) in every unpinned year", {{"lms.shape", "uniform"}}},
        {"growth-0.9-0.1", "growth weights 0.1 on 6.3x and 0.9 on 3.4x", {{"growth.rates", "6.3:0.1, 3.4:0.9"}}},
        {"growth-0.33-0.66",
         "growth weights 1/3 on 6.3x and 2/3 on 3.4x",
         {{"growth.rates", "6.3:0.3333333333333333, 3.4:0.6666666666666667"}}},
        {"growth-0.5-0.5", "growth weights 0.5 on 6.3x and 0.5 on 3.4x", {{"growth.rates", "6.3:0.5, 3.4:0.5"}}},
        {"gate-shares",
         "training shares 90, 90, 70, 70, 70% for 2024-2028",
         {{"share.2024", "0.9"}, {"share.2025", "0.9"}, {"share.2026", "0.7"}, {"share.2027", "0.7"},
          {"share.2028", "0.7"}}},
        {"k-0.7-0.9", "allocation gradient k ~ U[0.7, 0.9]", {{"k.range", "0.7, 0.9"}}},
        {"k-0.5-0.7", "allocation gradient k ~ U[0.5, 0.7]", {{"k.range", "0.5, 0.7"}}},
    };
    return kPresets;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    std::string known;
    for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

std::vector<std::string> match_presets(const std::string& pattern) {
    std::vector<std::string> out;
    if (!pattern.empty() && pattern.back() == '*') {
        const std::string prefix = pattern.substr(0, pattern.size() - 1);
        for (const auto& p : presets())
            if (starts_with(p.name, prefix)) out.push_back(p.name);
        if (out.empty()) throw ConfigError("no preset matches '" + pattern + "'");
    } else {
        out.push_back(find_preset(pattern).name);
    }
    return out;
}

ScenarioConfig load_config(const std::optional<std::filesystem::path>& path, const std::string& preset,
                           const KeyValues& flag_overrides) {
    ScenarioConfig config;
    for (const auto& [k, v] : find_preset(preset).overrides) apply_setting(config, k, v);
    if (path) {
        std::ifstream in(*path);
        if (!in) throw ConfigError("cannot open config file '" + path->string() + "'");
        std::ostringstream text;
        text << in.rdbuf();
        for (const auto& [k, v] : parse_key_values(text.str())) apply_setting(config, k, v);
    }
    for (const auto& [k, v] : flag_overrides) apply_setting(config, k, v);
    config.validate();
    return config;
}

}  // namespace ctf
