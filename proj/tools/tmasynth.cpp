// tmasynth: synthesize and evaluate time-modulated linear-array schedules.
//
// Subcommands: evaluate, pattern, optimize, sweep. Defaults reproduce the
// reference setup (8 pairs, d = lambda/2, 10 steps, levels 0..7, population
// 60, 2000 generations, weights 1:6). Exit codes: 0 ok, 2 config or parse
// error, 3 degenerate input.

#include "tma/cli_commands.hpp"
#include "tma/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

struct FlagBinding {
    std::string flag;
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
};

struct CommonOptions {
    std::string config_file;
    CLI::Option* config_opt = nullptr;
    std::string out_dir;
    CLI::Option* out_opt = nullptr;
    bool early_stop = false;
    bool patterns = false;
    bool quiet = false;
    std::vector<FlagBinding> bindings;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    opts.config_opt = cmd->add_option("--config", opts.config_file, "key = value config file");
    opts.out_opt = cmd->add_option("--out", opts.out_dir, "output directory")
                       ->envname("TMASYNTH_OUT");

    const std::vector<std::pair<std::string, std::string>> flags = {
        {"--element-pairs", "element_pairs"},
        {"--spacing-wavelengths", "spacing_wavelengths"},
        {"--time-steps", "time_steps"},
        {"--max-gene", "max_gene"},
        {"--modulation-period-seconds", "modulation_period_seconds"},
        {"--carrier-frequency-hz", "carrier_frequency_hz"},
        {"--grid", "grid_points"},
        {"--harmonics", "sideband_count"},
        {"--suppression-clamp-db", "suppression_clamp_db"},
        {"--refine-extrema", "refine_extrema"},
        {"--population-size", "population_size"},
        {"--generations", "generations"},
        {"--crossover-probability", "crossover_probability"},
        {"--mutation-probability", "mutation_probability"},
        {"--elite-count", "elite_count"},
        {"--w1", "w1"},
        {"--w2", "w2"},
        {"--seed", "rng_seed"},
        {"--closeness-db", "closeness_db"},
        {"--floor-db", "floor_db"},
        {"--mutation-mode", "mutation_mode"},
    };
    opts.bindings.reserve(flags.size());
    for (const auto& [flag, key] : flags) {
        FlagBinding b{flag, key, "", nullptr};
        opts.bindings.push_back(b);
        FlagBinding& stored = opts.bindings.back();
        stored.option = cmd->add_option(flag, stored.value, "overrides " + key);
    }
    cmd->add_flag("--early-stop", opts.early_stop,
                  "stop once best SLL and SBL are close and both high");
    cmd->add_flag("--patterns", opts.patterns, "also write per-harmonic pattern tables");
    cmd->add_flag("--quiet", opts.quiet, "suppress the stdout summary");
}

// Defaults, then the config file, then explicit flags.
tma::RunConfig merge_config(const CommonOptions& opts) {
    tma::RunConfig run;
    if (opts.config_opt->count() > 0) tma::apply_config_file(run, opts.config_file);
    for (const FlagBinding& b : opts.bindings) {
        if (b.option->count() > 0) tma::set_config_field(run, b.key, b.value);
    }
    if (opts.early_stop && !run.ga.early_stop) run.ga.early_stop.emplace();
    if (opts.out_opt->count() > 0 || !opts.out_dir.empty()) run.out_dir = opts.out_dir;
    run.write_patterns = opts.patterns;
    run.quiet = opts.quiet;
    return run;
}

std::vector<std::pair<double, double>> parse_ratios(const std::string& spec) {
    std::vector<std::pair<double, double>> ratios;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string item = spec.substr(pos, comma - pos);
        const size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw tma::ConfigError("ratio '" + item + "' is not of the form w1:w2");
        }
        try {
            ratios.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw tma::ConfigError("ratio '" + item + "' is not of the form w1:w2");
        }
        pos = comma + 1;
    }
    return ratios;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-modulated linear array synthesis"};
    app.require_subcommand(1);

    CLI::App* evaluate = app.add_subcommand("evaluate", "metrics and patterns for a schedule file");
    std::string evaluate_schedule;
    evaluate->add_option("schedule", evaluate_schedule, "schedule file")->required();
    CommonOptions evaluate_opts;
    add_common_options(evaluate, evaluate_opts);

    CLI::App* pattern = app.add_subcommand("pattern", "single-harmonic pattern for a schedule file");
    std::string pattern_schedule;
    int pattern_harmonic = 0;
    pattern->add_option("schedule", pattern_schedule, "schedule file")->required();
    pattern->add_option("--m,--harmonic", pattern_harmonic, "harmonic index")->required();
    CommonOptions pattern_opts;
    add_common_options(pattern, pattern_opts);

    CLI::App* optimize = app.add_subcommand("optimize", "run the genetic optimizer");
    CommonOptions optimize_opts;
    add_common_options(optimize, optimize_opts);

    CLI::App* sweep = app.add_subcommand("sweep", "optimize across weight ratios");
    std::string ratio_spec = "1:1,1:3,1:6,1:10";
    int seeds_per_ratio = 5;
    sweep->add_option("--ratios", ratio_spec, "comma-separated w1:w2 list");
    sweep->add_option("--seeds-per-ratio", seeds_per_ratio, "independent runs per ratio");
    CommonOptions sweep_opts;
    add_common_options(sweep, sweep_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*evaluate) {
            cmd_evaluate(merge_config(evaluate_opts), evaluate_schedule, std::cout);
        } else if (*pattern) {
            cmd_pattern(merge_config(pattern_opts), pattern_schedule, pattern_harmonic, std::cout);
        } else if (*optimize) {
            cmd_optimize(merge_config(optimize_opts), std::cout);
        } else if (*sweep) {
            cmd_sweep(merge_config(sweep_opts), parse_ratios(ratio_spec), seeds_per_ratio,
                      std::cout);
        }
    } catch (const tma::DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const tma::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
