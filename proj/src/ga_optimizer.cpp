#include "tma/ga_optimizer.hpp"
#include "tma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tma {

namespace {

int draw_int(Rng& rng, int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double draw_unit(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

struct Member {
    ExcitationSchedule schedule;
    PatternMetrics metrics;
    double fitness = 0.0;
    bool evaluated = false;
};

// Fitness-descending order, ties to the lower population index.
std::vector<int> rank_members(const std::vector<Member>& pop) {
    std::vector<int> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pop[a].fitness != pop[b].fitness) return pop[a].fitness > pop[b].fitness;
        return a < b;
    });
    return order;
}

} // namespace

void GaConfig::validate() const {
    if (population_size < 1) throw ConfigError("population_size must be >= 1");
    if (generations < 1) throw ConfigError("generations must be >= 1");
    if (crossover_probability < 0.0 || crossover_probability > 1.0) {
        throw ConfigError("crossover_probability must be in [0, 1]");
    }
    if (mutation_probability < 0.0 || mutation_probability > 1.0) {
        throw ConfigError("mutation_probability must be in [0, 1]");
    }
    if (elite_count < 0 || elite_count >= population_size) {
        throw ConfigError("elite_count must be in [0, population_size)");
    }
    if (w1 < 0.0 || w2 < 0.0) throw ConfigError("fitness weights must be nonnegative");
    if (w1 == 0.0 && w2 == 0.0) throw ConfigError("fitness weights must not both be zero");
    if (early_stop) {
        if (early_stop->closeness_db < 0.0) throw ConfigError("early_stop closeness_db must be >= 0");
        if (early_stop->floor_db < 0.0) throw ConfigError("early_stop floor_db must be >= 0");
    }
}

std::vector<ExcitationSchedule> initialize_population(const ArrayConfig& array,
                                                      const GaConfig& ga, Rng& rng) {
    array.validate();
    ga.validate();
    std::vector<ExcitationSchedule> population;
    population.reserve(ga.population_size);
    for (int i = 0; i < ga.population_size; ++i) {
        ExcitationSchedule s(array.element_pairs, array.time_steps);
        do {
            for (int& g : s.chromosome()) g = draw_int(rng, 0, array.max_gene);
        } while (s.all_zero());
        population.push_back(std::move(s));
    }
    return population;
}

SurvivorMarking mark_survivors(std::span<const double> fitnesses,
                               std::span<const int> elite_indices) {
    if (fitnesses.empty()) throw ConfigError("mark_survivors needs at least one fitness value");
    const double mean =
        std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0) / fitnesses.size();

    SurvivorMarking m;
    m.survivor.resize(fitnesses.size(), false);
    for (size_t i = 0; i < fitnesses.size(); ++i) m.survivor[i] = fitnesses[i] >= mean;
    for (int e : elite_indices) {
        if (e < 0 || static_cast<size_t>(e) >= fitnesses.size()) {
            throw ConfigError("elite index outside the population");
        }
        m.survivor[e] = true;
    }
    m.count = static_cast<int>(std::count(m.survivor.begin(), m.survivor.end(), true));
    return m;
}

std::pair<ExcitationSchedule, ExcitationSchedule> crossover_at(const ExcitationSchedule& a,
                                                               const ExcitationSchedule& b,
                                                               int cut) {
    if (a.pairs() != b.pairs() || a.steps() != b.steps()) {
        throw ConfigError("crossover parents have different shapes");
    }
    const int len = a.pairs() * a.steps();
    if (cut < 1 || cut >= len) throw ConfigError("crossover cut outside [1, len-1]");
    auto children = std::make_pair(a, b);
    auto ca = children.first.chromosome();
    auto cb = children.second.chromosome();
    std::swap_ranges(ca.begin() + cut, ca.end(), cb.begin() + cut);
    return children;
}

std::pair<ExcitationSchedule, ExcitationSchedule> crossover(const ExcitationSchedule& a,
                                                            const ExcitationSchedule& b,
                                                            double probability, Rng& rng) {
    if (a.pairs() != b.pairs() || a.steps() != b.steps()) {
        throw ConfigError("crossover parents have different shapes");
    }
    const int len = a.pairs() * a.steps();
    if (len >= 2 && draw_unit(rng) < probability) {
        return crossover_at(a, b, draw_int(rng, 1, len - 1));
    }
    return {a, b};
}

ExcitationSchedule mutate(const ExcitationSchedule& schedule, double probability,
                          int max_gene, Rng& rng, MutationMode mode) {
    if (max_gene < 0) throw ConfigError("max_gene must be >= 0");
    ExcitationSchedule out = schedule;
    if (mode == MutationMode::PerGene) {
        for (int& g : out.chromosome()) {
            if (draw_unit(rng) < probability) g = draw_int(rng, 0, max_gene);
        }
    } else {
        if (draw_unit(rng) < probability) {
            const int len = out.pairs() * out.steps();
            const int pos = draw_int(rng, 0, len - 1);
            out.chromosome()[pos] = draw_int(rng, 0, max_gene);
        }
    }
    return out;
}

GaResult evolve(const ArrayConfig& array, const GaConfig& ga, const MetricsConfig& metrics) {
    array.validate();
    ga.validate();
    metrics.validate();

    const MetricsEvaluator evaluator(array, metrics);
    Rng rng(ga.rng_seed);

    std::vector<Member> population;
    population.reserve(ga.population_size);
    for (ExcitationSchedule& s : initialize_population(array, ga, rng)) {
        population.push_back({std::move(s), {}, 0.0, false});
    }

    GaResult result;
    result.best_fitness = -std::numeric_limits<double>::infinity();
    result.trace.reserve(ga.generations);

    for (int generation = 1; generation <= ga.generations; ++generation) {
        for (Member& m : population) {
            if (m.evaluated) continue;
            m.metrics = evaluator.evaluate(m.schedule);
            m.fitness = combined_fitness(m.metrics, ga.w1, ga.w2);
            m.evaluated = true;
        }

        const std::vector<int> order = rank_members(population);
        const std::vector<int> elites(order.begin(),
                                      order.begin() + std::min<size_t>(ga.elite_count, order.size()));

        std::vector<double> fits(population.size());
        for (size_t i = 0; i < population.size(); ++i) fits[i] = population[i].fitness;
        const SurvivorMarking marking = mark_survivors(fits, elites);

        const Member& best = population[order[0]];
        const double average = std::accumulate(fits.begin(), fits.end(), 0.0) / fits.size();
        result.trace.push_back({generation, best.fitness, average,
                                best.metrics.sll_suppression_db,
                                best.metrics.sbl_suppression_db, marking.count});

        if (best.fitness > result.best_fitness) {
            result.best = best.schedule;
            result.best_metrics = best.metrics;
            result.best_fitness = best.fitness;
        }

        if (generation == ga.generations) break;
        if (ga.early_stop) {
            const double sll = best.metrics.sll_suppression_db;
            const double sbl = best.metrics.sbl_suppression_db;
            if (std::abs(sll - sbl) <= ga.early_stop->closeness_db &&
                sll >= ga.early_stop->floor_db && sbl >= ga.early_stop->floor_db) {
                break;
            }
        }

        std::vector<int> survivors;
        for (size_t i = 0; i < marking.survivor.size(); ++i) {
            if (marking.survivor[i]) survivors.push_back(static_cast<int>(i));
        }

        std::vector<Member> next;
        next.reserve(population.size());
        for (int e : elites) next.push_back(population[e]);  // carried over unmutated
        while (next.size() < population.size()) {
            ExcitationSchedule child(array.element_pairs, array.time_steps);
            if (survivors.size() < 2) {
                // Degenerate mating pool: clone the best member, mutation still applies.
                child = mutate(best.schedule, ga.mutation_probability, array.max_gene, rng,
                               ga.mutation_mode);
            } else {
                const int pool = static_cast<int>(survivors.size());
                const int first = draw_int(rng, 0, pool - 1);
                int second = draw_int(rng, 0, pool - 2);
                if (second >= first) ++second;
                auto bred = crossover(population[survivors[first]].schedule,
                                      population[survivors[second]].schedule,
                                      ga.crossover_probability, rng);
                child = mutate(bred.first, ga.mutation_probability, array.max_gene, rng,
                               ga.mutation_mode);
            }
            if (child.all_zero()) continue;  // undefined fitness; redraw this offspring
            next.push_back({std::move(child), {}, 0.0, false});
        }
        population = std::move(next);
    }
    return result;
}

} // namespace tma
