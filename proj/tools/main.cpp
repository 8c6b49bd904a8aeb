// SPDX-License-Identifier: Apache-2.0
//
// ctf: compute-threshold forecasting command-line tool.
#include <CLI11.hpp>
#include <iostream>
#include <thread>

#include "ctf/commands.hpp"
#include "ctf/config_io.hpp"

#ifndef CTF_DEFAULT_DATASET
#define CTF_DEFAULT_DATASET ""
#endif

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo forecasts of how many ML models exceed training-compute thresholds"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", "ctf 1.0");

    ctf::CommandOptions o;
    std::string config_path, dataset = CTF_DEFAULT_DATASET, presets_list;
    std::uint64_t seed = 0, trials = 0;
    std::string years, thresholds, deltas;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    auto common = [&](CLI::App* sub, bool scenario, bool randomized) {
        sub->add_option("--out", o.out_dir, "Output directory")->default_val("out");
        sub->add_option("--years", years, "Years as A..B or a comma list");
        if (scenario) {
            sub->add_option("--config", config_path, "Key-value scenario file")->check(CLI::ExistingFile);
            sub->add_option("--thresholds", thresholds, "Absolute thresholds in FLOP, comma separated");
            sub->add_option("--deltas", deltas, "Frontier distances in OOM, comma separated");
            sub->add_flag("--trace", o.trace, "Dump per-trial draws and model sizes");
        }
        if (randomized) {
            sub->add_option("--seed", seed, "64-bit seed; generated and reported when omitted");
            sub->add_option("--trials", trials, "Number of Monte Carlo trials")->check(CLI::PositiveNumber);
            sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
        }
    };

    auto* forecast = app.add_subcommand("forecast", "Forecast threshold counts for one preset");
    common(forecast, true, true);
    forecast->add_option("--preset", o.preset, "Scenario preset")->default_val("baseline");

    auto* sweep = app.add_subcommand("sweep", "Forecast every preset matching a list of names or prefix* patterns");
    common(sweep, true, true);
    sweep->add_option("--presets", presets_list, "Comma-separated preset names or patterns")->required();

    auto* retro = app.add_subcommand("retrodict", "Check observed counts against simulated 90% intervals");
    common(retro, false, true);
    retro->add_option("--thresholds", thresholds, "Absolute thresholds in FLOP, comma separated");
    retro->add_option("--deltas", deltas, "Frontier distances in OOM, comma separated");
    retro->add_option("--dataset", dataset, "Model dataset CSV")->check(CLI::ExistingFile);

    auto* fit = app.add_subcommand("fit", "Fit the allocation gradient k for each year");
    common(fit, false, false);
    fit->add_option("--dataset", dataset, "Model dataset CSV")->check(CLI::ExistingFile);

    auto* observed = app.add_subcommand("observed", "Observed counts and yearly statistics from the dataset");
    common(observed, false, false);
    observed->add_option("--thresholds", thresholds, "Absolute thresholds in FLOP, comma separated");
    observed->add_option("--deltas", deltas, "Frontier distances in OOM, comma separated");
    observed->add_option("--dataset", dataset, "Model dataset CSV")->check(CLI::ExistingFile);

    auto* list = app.add_subcommand("presets", "List scenario presets");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& p : ctf::presets()) std::cout << p.name << "  " << p.description << "\n";
        return 0;
    }

    CLI::App* sub = app.get_subcommands().front();
    auto given = [sub](const char* name) {
        const auto* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    o.command = sub->get_name();
    if (given("--config")) o.config_path = config_path;
    if (given("--seed")) o.seed = seed;
    if (given("--trials")) o.trials = trials;
    if (given("--years")) o.years = years;
    if (given("--thresholds")) o.thresholds = thresholds;
    if (given("--deltas")) o.deltas = deltas;
    if (!dataset.empty()) o.dataset = dataset;
    o.workers = workers;
    if (sweep->parsed()) {
        std::stringstream in(presets_list);
        for (std::string item; std::getline(in, item, ',');)
            if (!item.empty()) o.sweep_presets.push_back(item);
    }
    for (int i = 0; i < argc; ++i) o.command_line += (i ? " " : "") + std::string(argv[i]);

    return ctf::run_command(o, std::cout, std::cerr);
}
