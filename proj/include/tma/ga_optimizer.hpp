#ifndef TMA_GA_OPTIMIZER_HPP
#define TMA_GA_OPTIMIZER_HPP

#include "tma/pattern_metrics.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace tma {

using Rng = std::mt19937_64;

/// Terminate once the best member's SLL and SBL suppressions sit within
/// `closeness_db` of each other and both reach `floor_db`.
struct EarlyStopRule {
    double closeness_db = 1.0;
    double floor_db = 27.0;
};

enum class MutationMode { PerGene, PerChromosome };

struct GaConfig {
    int population_size = 60;
    int generations = 2000;
    double crossover_probability = 0.95;
    double mutation_probability = 0.05;   // per gene (or per chromosome, see mode)
    int elite_count = 25;
    double w1 = 1.0;
    double w2 = 6.0;
    std::uint64_t rng_seed = 1;
    std::optional<EarlyStopRule> early_stop;  // off by default
    MutationMode mutation_mode = MutationMode::PerGene;

    void validate() const;
};

struct GaTraceRow {
    int generation = 0;  // 1-based
    double best_fitness = 0.0;
    double average_fitness = 0.0;
    double best_sll_suppression_db = 0.0;
    double best_sbl_suppression_db = 0.0;
    int survivor_count = 0;
};
using GaTrace = std::vector<GaTraceRow>;

struct GaResult {
    ExcitationSchedule best;
    PatternMetrics best_metrics;
    double best_fitness = 0.0;
    GaTrace trace;
};

/// population_size schedules with genes uniform on {0..max_gene}; all-zero
/// draws are rejected and redrawn since their fitness is undefined.
std::vector<ExcitationSchedule> initialize_population(const ArrayConfig& array,
                                                      const GaConfig& ga, Rng& rng);

struct SurvivorMarking {
    std::vector<bool> survivor;
    int count = 0;
};

/// Elites are always marked; everyone else survives iff their fitness is at
/// least the population's arithmetic mean.
SurvivorMarking mark_survivors(std::span<const double> fitnesses,
                               std::span<const int> elite_indices);

/// Single-point crossover on the flattened chromosomes at the given cut
/// (tail swap; cut in [1, len-1]).
std::pair<ExcitationSchedule, ExcitationSchedule> crossover_at(const ExcitationSchedule& a,
                                                               const ExcitationSchedule& b,
                                                               int cut);

/// With `probability`, picks a uniform cut and swaps tails; otherwise the
/// children are verbatim copies of the parents.
std::pair<ExcitationSchedule, ExcitationSchedule> crossover(const ExcitationSchedule& a,
                                                            const ExcitationSchedule& b,
                                                            double probability, Rng& rng);

/// PerGene: every gene is independently redrawn from {0..max_gene} with the
/// given probability (the draw may repeat the old value). PerChromosome: one
/// uniformly chosen gene is redrawn, with the given probability.
ExcitationSchedule mutate(const ExcitationSchedule& schedule, double probability,
                          int max_gene, Rng& rng,
                          MutationMode mode = MutationMode::PerGene);

/// Generational loop: evaluate, pick elites (ties to the lower index), mark
/// survivors, then carry the elites over unmutated and fill the remaining
/// slots with offspring bred from uniformly drawn distinct survivor pairs
/// (crossover, then mutation). Stops at the generation cap or on the
/// early-stop rule. All randomness comes from a single stream seeded with
/// ga.rng_seed and consumed in a fixed order: initialization first, then per
/// generation the pairing/crossover/mutation draws in offspring-slot order.
/// Elite fitness values are cached, never recomputed.
GaResult evolve(const ArrayConfig& array, const GaConfig& ga, const MetricsConfig& metrics);

} // namespace tma

#endif
