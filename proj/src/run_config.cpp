#include "tma/run_config.hpp"
#include "tma/errors.hpp"

#include <charconv>
#include <fstream>
#include <string>

namespace tma {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(std::string(key) + ": cannot parse '" + std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(std::string(key) + ": expected true/false, got '" + std::string(value) + "'");
}

EarlyStopRule& ensure_early_stop(GaConfig& ga) {
    if (!ga.early_stop) ga.early_stop.emplace();
    return *ga.early_stop;
}

} // namespace

void RunConfig::validate() const {
    array.validate();
    metrics.validate();
    ga.validate();
}

bool set_config_field(RunConfig& config, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);

    if (key == "element_pairs") config.array.element_pairs = parse_number<int>(key, value);
    else if (key == "spacing_wavelengths") config.array.spacing_wavelengths = parse_number<double>(key, value);
    else if (key == "time_steps") config.array.time_steps = parse_number<int>(key, value);
    else if (key == "max_gene") config.array.max_gene = parse_number<int>(key, value);
    else if (key == "modulation_period_seconds") config.array.modulation_period_seconds = parse_number<double>(key, value);
    else if (key == "carrier_frequency_hz") config.array.carrier_frequency_hz = parse_number<double>(key, value);
    else if (key == "grid_points") config.metrics.grid_points = parse_number<int>(key, value);
    else if (key == "sideband_count") config.metrics.sideband_count = parse_number<int>(key, value);
    else if (key == "suppression_clamp_db") config.metrics.suppression_clamp_db = parse_number<double>(key, value);
    else if (key == "refine_extrema") config.metrics.refine_extrema = parse_bool(key, value);
    else if (key == "population_size") config.ga.population_size = parse_number<int>(key, value);
    else if (key == "generations") config.ga.generations = parse_number<int>(key, value);
    else if (key == "crossover_probability") config.ga.crossover_probability = parse_number<double>(key, value);
    else if (key == "mutation_probability") config.ga.mutation_probability = parse_number<double>(key, value);
    else if (key == "elite_count") config.ga.elite_count = parse_number<int>(key, value);
    else if (key == "w1") config.ga.w1 = parse_number<double>(key, value);
    else if (key == "w2") config.ga.w2 = parse_number<double>(key, value);
    else if (key == "rng_seed") config.ga.rng_seed = parse_number<std::uint64_t>(key, value);
    else if (key == "early_stop") {
        if (parse_bool(key, value)) ensure_early_stop(config.ga);
        else config.ga.early_stop.reset();
    } else if (key == "closeness_db") ensure_early_stop(config.ga).closeness_db = parse_number<double>(key, value);
    else if (key == "floor_db") ensure_early_stop(config.ga).floor_db = parse_number<double>(key, value);
    else if (key == "mutation_mode") {
        if (value == "per_gene") config.ga.mutation_mode = MutationMode::PerGene;
        else if (value == "per_chromosome") config.ga.mutation_mode = MutationMode::PerChromosome;
        else throw ConfigError("mutation_mode: expected per_gene or per_chromosome, got '" + std::string(value) + "'");
    } else {
        return false;
    }
    return true;
}

void apply_config_file(RunConfig& config, const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string_view body = trim(line);
        if (body.empty()) continue;

        const size_t eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(body.substr(0, eq));
        const std::string_view value = trim(body.substr(eq + 1));
        try {
            if (!set_config_field(config, key, value)) {
                throw ConfigError("unknown key '" + std::string(key) + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

} // namespace tma
