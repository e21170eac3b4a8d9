#include "tma/cli_commands.hpp"
#include "tma/errors.hpp"
#include "tma/schedule_io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <thread>

namespace tma {

namespace {

std::string db2(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

std::string db6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + config.out_dir.string());
    return config.out_dir;
}

std::filesystem::path pattern_file_name(int harmonic) {
    return "pattern_m" + std::to_string(harmonic) + ".csv";
}

void write_patterns(const std::filesystem::path& dir, const MetricsEvaluator& evaluator,
                    const ExcitationSchedule& schedule, int first, int last) {
    const HarmonicPattern reference = evaluator.pattern(schedule, 0);
    const double main_beam = reference.magnitude.front();
    const double floor_db = evaluator.metrics_config().suppression_clamp_db;
    for (int m = first; m <= last; ++m) {
        const HarmonicPattern p = (m == 0) ? reference : evaluator.pattern(schedule, m);
        write_pattern_csv(dir / pattern_file_name(m), p, main_beam, floor_db);
    }
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

void cmd_evaluate(const RunConfig& config, const std::filesystem::path& schedule_file,
                  std::ostream& out) {
    config.array.validate();
    config.metrics.validate();

    const ExcitationSchedule schedule = read_schedule(schedule_file);
    schedule.validate_against(config.array);

    const MetricsEvaluator evaluator(config.array, config.metrics);
    const PatternMetrics metrics = evaluator.evaluate(schedule);

    const auto dir = prepare_out_dir(config);
    write_metrics_report(dir / "metrics.txt", metrics, config.array);
    write_patterns(dir, evaluator, schedule, 0, config.metrics.sideband_count);

    if (!config.quiet) {
        print_metrics_report(out, metrics, config.array);
        out << "wrote " << (dir / "metrics.txt").string() << " and "
            << config.metrics.sideband_count + 1 << " pattern tables\n";
    }
}

void cmd_pattern(const RunConfig& config, const std::filesystem::path& schedule_file,
                 int harmonic, std::ostream& out) {
    config.array.validate();
    config.metrics.validate();
    if (harmonic < 0 || harmonic > config.metrics.sideband_count) {
        throw ConfigError("harmonic must lie in [0, " +
                          std::to_string(config.metrics.sideband_count) +
                          "]; raise --harmonics for higher orders");
    }

    const ExcitationSchedule schedule = read_schedule(schedule_file);
    schedule.validate_against(config.array);

    if (schedule.all_zero()) {
        throw DegenerateInputError("all-zero schedule: no main beam to normalize against");
    }
    const MetricsEvaluator evaluator(config.array, config.metrics);

    const auto dir = prepare_out_dir(config);
    write_patterns(dir, evaluator, schedule, harmonic, harmonic);
    if (!config.quiet) out << "wrote " << (dir / pattern_file_name(harmonic)).string() << '\n';
}

GaResult cmd_optimize(const RunConfig& config, std::ostream& out) {
    config.validate();

    GaResult result = evolve(config.array, config.ga, config.metrics);

    const auto dir = prepare_out_dir(config);
    write_schedule(dir / "best_schedule.txt", result.best);
    write_metrics_report(dir / "metrics.txt", result.best_metrics, config.array);
    write_trace_csv(dir / "trace.csv", result.trace);
    if (config.write_patterns) {
        const MetricsEvaluator evaluator(config.array, config.metrics);
        write_patterns(dir, evaluator, result.best, 0, config.metrics.sideband_count);
    }

    if (!config.quiet) {
        out << "generations run: " << result.trace.size() << '\n';
        out << "best fitness:    " << db2(result.best_fitness) << '\n';
        out << "SLL = " << db2(-result.best_metrics.sll_suppression_db) << " dB, SBL = "
            << db2(-result.best_metrics.sbl_suppression_db) << " dB\n";
        out << "wrote " << (dir / "best_schedule.txt").string() << ", metrics.txt, trace.csv\n";
    }
    return result;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& config,
                                const std::vector<std::pair<double, double>>& ratios,
                                int seeds_per_ratio, std::ostream& out) {
    if (ratios.empty()) throw ConfigError("sweep needs at least one weight ratio");
    if (seeds_per_ratio < 1) throw ConfigError("seeds_per_ratio must be >= 1");
    for (const auto& [w1, w2] : ratios) {
        RunConfig probe = config;
        probe.ga.w1 = w1;
        probe.ga.w2 = w2;
        probe.validate();
    }

    struct Job {
        RunConfig run;
        SweepRow row;
    };
    std::vector<Job> jobs;
    for (const auto& [w1, w2] : ratios) {
        for (int rep = 0; rep < seeds_per_ratio; ++rep) {
            Job j;
            j.run = config;
            j.run.ga.w1 = w1;
            j.run.ga.w2 = w2;
            j.run.ga.rng_seed = config.ga.rng_seed + static_cast<std::uint64_t>(rep);
            j.row = {w1, w2, j.run.ga.rng_seed, 0.0, 0.0, 0.0};
            jobs.push_back(std::move(j));
        }
    }

    // Each run is deterministic in its own seed, so concurrent execution
    // cannot change results; collection order is fixed by the job list.
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (size_t i = cursor.fetch_add(1); i < jobs.size(); i = cursor.fetch_add(1)) {
            const GaResult r = evolve(jobs[i].run.array, jobs[i].run.ga, jobs[i].run.metrics);
            jobs[i].row.sll_suppression_db = r.best_metrics.sll_suppression_db;
            jobs[i].row.sbl_suppression_db = r.best_metrics.sbl_suppression_db;
            jobs[i].row.fitness = r.best_fitness;
        }
    };
    std::vector<std::future<void>> futures;
    for (unsigned w = 1; w < workers && w < jobs.size(); ++w) {
        futures.push_back(std::async(std::launch::async, worker));
    }
    worker();
    for (auto& f : futures) f.get();

    const auto dir = prepare_out_dir(config);
    std::ofstream detail(dir / "sweep.csv");
    if (!detail) throw ConfigError("cannot open " + (dir / "sweep.csv").string());
    detail << "w1,w2,seed,sll_db,sbl_db,fitness\n";
    std::vector<SweepRow> rows;
    for (const Job& j : jobs) {
        rows.push_back(j.row);
        detail << j.row.w1 << ',' << j.row.w2 << ',' << j.row.seed << ','
               << db6(-j.row.sll_suppression_db) << ',' << db6(-j.row.sbl_suppression_db) << ','
               << db6(j.row.fitness) << '\n';
    }

    std::ofstream summary(dir / "sweep_summary.csv");
    if (!summary) throw ConfigError("cannot open " + (dir / "sweep_summary.csv").string());
    summary << "w1,w2,median_sll_db,median_sbl_db,median_fitness\n";
    if (!config.quiet) out << "w1:w2    median SLL    median SBL\n";
    for (const auto& [w1, w2] : ratios) {
        std::vector<double> sll, sbl, fit;
        for (const SweepRow& r : rows) {
            if (r.w1 == w1 && r.w2 == w2) {
                sll.push_back(r.sll_suppression_db);
                sbl.push_back(r.sbl_suppression_db);
                fit.push_back(r.fitness);
            }
        }
        summary << w1 << ',' << w2 << ',' << db6(-median(sll)) << ',' << db6(-median(sbl)) << ','
                << db6(median(fit)) << '\n';
        if (!config.quiet) {
            out << w1 << ':' << w2 << "    " << db2(-median(sll)) << " dB    "
                << db2(-median(sbl)) << " dB\n";
        }
    }
    if (!config.quiet) {
        out << "wrote " << (dir / "sweep.csv").string() << " and sweep_summary.csv\n";
    }
    return rows;
}

} // namespace tma
