#ifndef TMA_CLI_COMMANDS_HPP
#define TMA_CLI_COMMANDS_HPP

#include "tma/ga_optimizer.hpp"
#include "tma/run_config.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace tma {

/// Evaluate a schedule file: writes metrics.txt plus pattern_m0..n_max.csv
/// under config.out_dir and prints the metrics summary.
void cmd_evaluate(const RunConfig& config, const std::filesystem::path& schedule_file,
                  std::ostream& out);

/// Evaluate restricted to one harmonic: writes a single pattern_m<h>.csv,
/// still normalized to the m = 0 main beam.
void cmd_pattern(const RunConfig& config, const std::filesystem::path& schedule_file,
                 int harmonic, std::ostream& out);

/// Run the optimizer; writes best_schedule.txt, metrics.txt, trace.csv (and
/// per-harmonic pattern tables when config.write_patterns) under
/// config.out_dir. Returns the result for callers that want it.
GaResult cmd_optimize(const RunConfig& config, std::ostream& out);

struct SweepRow {
    double w1 = 0.0;
    double w2 = 0.0;
    std::uint64_t seed = 0;
    double sll_suppression_db = 0.0;
    double sbl_suppression_db = 0.0;
    double fitness = 0.0;
};

/// One optimizer run per (weight ratio, seed); seeds are rng_seed + 0..reps-1
/// for every ratio. Runs execute concurrently but results are collected in
/// ratio-major order, so output is deterministic. Writes sweep.csv and
/// sweep_summary.csv (per-ratio medians, in the given ratio order).
std::vector<SweepRow> cmd_sweep(const RunConfig& config,
                                const std::vector<std::pair<double, double>>& ratios,
                                int seeds_per_ratio, std::ostream& out);

} // namespace tma

#endif
