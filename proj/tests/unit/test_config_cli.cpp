// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "ctf/commands.hpp"
#include "ctf/config_io.hpp"

using namespace ctf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("ctf_unit_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(CommandOptions o) {
    std::ostringstream out, err;
    o.dataset = CTF_FIXTURE;
    return run_command(o, out, err);
}

KeyValues diff_lines(const ScenarioConfig& a, const ScenarioConfig& b) {
    const auto ka = parse_key_values(to_key_value_text(a));
    const auto kb = parse_key_values(to_key_value_text(b));
    KeyValues d;
    for (const auto& kv : kb)
        if (std::find(ka.begin(), ka.end(), kv) == ka.end()) d.push_back(kv);
    return d;
}

}  // namespace

TEST_CASE("key-value parsing") {
    const auto kv = parse_key_values("# comment\n trials = 10 # trailing\n\nseed=5\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv[0] == std::pair<std::string, std::string>{"trials", "10"});
    CHECK_THROWS_AS(parse_key_values("trials 10\n"), ConfigError);
}

TEST_CASE("defaults and presets") {
    const auto base = load_config(std::nullopt, "baseline");
    CHECK(base.share_schedule.at(2028) == 0.30);
    CHECK(base.share_schedule.at(2024) == 0.40);
    const auto gate = load_config(std::nullopt, "gate-shares");
    CHECK(gate.share_schedule.at(2026) == 0.70);
    CHECK(gate.base_share == 0.40);
    CHECK(load_config(std::nullopt, "baseline", {{"trials", "10"}}).trials == 10);
    CHECK_THROWS_AS(load_config(std::nullopt, "no-such-preset"), ConfigError);
    CHECK_THROWS_AS(load_config(std::nullopt, "baseline", {{"bogus", "1"}}), ConfigError);
    CHECK_THROWS_AS(load_config(std::nullopt, "baseline", {{"trials", "0"}}), ConfigError);
}

TEST_CASE("presets change only what they name") {
    const auto base = load_config(std::nullopt, "baseline");
    for (const auto& p : presets()) {
        const auto cfg = load_config(std::nullopt, p.name);
        const auto d = diff_lines(base, cfg);
        CAPTURE(p.name);
        if (p.name == "baseline") CHECK(d.empty());
        for (const auto& [key, value] : d) {
            bool named = false;
            for (const auto& [okey, ovalue] : p.overrides) named = named || okey == key;
            CAPTURE(key);
            CHECK(named);
        }
    }
    CHECK(match_presets("growth-*").size() == 3);
}

TEST_CASE("file and flag precedence") {
    TempDir tmp("precedence");
    const auto file = tmp.path / "c.txt";
    std::ofstream(file) << "trials = 20\nseed = 9\nlms.shape = uniform\n";
    const auto cfg = load_config(file, "k-0.5-0.7", {{"trials", "30"}});
    CHECK(cfg.trials == 30);
    CHECK(cfg.seed == 9);
    CHECK(cfg.lms.shape == LmsShape::uniform);
    CHECK(cfg.k_range == std::pair{0.5, 0.7});
    CHECK(config_hash(cfg) != config_hash(load_config(std::nullopt, "baseline")));
    CHECK(config_hash(cfg) == config_hash(load_config(file, "k-0.5-0.7", {{"trials", "30"}})));
}

TEST_CASE("list parsing") {
    CHECK(parse_years("2024..2026") == std::vector<int>{2024, 2025, 2026});
    CHECK(parse_years("2020, 2022") == std::vector<int>{2020, 2022});
    CHECK(parse_number_list("1e25, 1e26") == std::vector<double>{1e25, 1e26});
    CHECK_THROWS(parse_number_list("1e25, x"));
}

TEST_CASE("forecast output is reproducible") {
    TempDir tmp("forecast");
    CommandOptions o;
    o.command = "forecast";
    o.seed = 42;
    o.trials = 100;
    o.out_dir = tmp.path / "a";
    REQUIRE(run(o) == 0);
    o.out_dir = tmp.path / "b";
    o.workers = 4;
    REQUIRE(run(o) == 0);
    for (const char* f : {"summary_absolute.csv", "summary_frontier.csv", "summary.json"})
        CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
    CHECK(slurp(tmp.path / "a" / "summary_absolute.csv").find("# seed=42") != std::string::npos);
    CHECK(fs::exists(tmp.path / "a" / "run_meta.txt"));
}

TEST_CASE("observed command") {
    TempDir tmp("observed");
    CommandOptions o;
    o.command = "observed";
    o.out_dir = tmp.path;
    REQUIRE(run(o) == 0);
    const auto text = slurp(tmp.path / "observed_absolute.csv");
    CHECK(text.find("2023,1.00e23,54\n") != std::string::npos);
    CHECK(text.find("2023,1.00e24,19\n") != std::string::npos);
    CHECK(text.find("2023,1.00e25,4\n") != std::string::npos);
}

TEST_CASE("fit command") {
    TempDir tmp("fit");
    CommandOptions o;
    o.command = "fit";
    o.out_dir = tmp.path;
    REQUIRE(run(o) == 0);
    std::istringstream in(slurp(tmp.path / "fit.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("year", 0) == 0) continue;
        const auto c1 = line.find(',');
        const double k = std::stod(line.substr(c1 + 1));
        CHECK(k >= 0.85);
        CHECK(k <= 1.15);
        ++rows;
    }
    CHECK(rows == 7);
}

TEST_CASE("sweep over growth presets") {
    TempDir tmp("sweep");
    CommandOptions o;
    o.command = "sweep";
    o.sweep_presets = {"growth-*"};
    o.seed = 42;
    o.trials = 300;
    o.workers = 4;
    o.out_dir = tmp.path;
    REQUIRE(run(o) == 0);
    CHECK(fs::exists(tmp.path / "sweep_comparison.csv"));
    std::map<std::string, long> p50;
    std::istringstream in(slurp(tmp.path / "sweep_comparison.csv"));
    std::string line;
    while (std::getline(in, line)) {
        if (line.find(",absolute,2028,1.00e25,") == std::string::npos) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
        p50[f[0]] = std::stol(f[5]);
    }
    REQUIRE(p50.size() == 3);
    CHECK(p50["growth-0.9-0.1"] < p50["growth-0.33-0.66"]);
    CHECK(p50["growth-0.33-0.66"] < p50["growth-0.5-0.5"]);
}

TEST_CASE("failures give a nonzero status") {
    TempDir tmp("fail");
    std::ofstream(tmp.path / "file") << "x";
    CommandOptions o;
    o.command = "forecast";
    o.seed = 1;
    o.trials = 5;
    o.out_dir = tmp.path / "file" / "sub";
    CHECK(run(o) != 0);

    CommandOptions bad;
    bad.command = "nope";
    bad.out_dir = tmp.path / "x";
    CHECK(run(bad) != 0);

    CommandOptions retro;
    retro.command = "retrodict";
    retro.config_path = tmp.path / "file";
    retro.out_dir = tmp.path / "r";
    CHECK(run(retro) != 0);
}
