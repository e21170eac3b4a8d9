#ifndef TMA_RUN_CONFIG_HPP
#define TMA_RUN_CONFIG_HPP

#include "tma/array_model.hpp"
#include "tma/ga_optimizer.hpp"
#include "tma/pattern_metrics.hpp"

#include <filesystem>
#include <string_view>

namespace tma {

/// Everything one command run needs. Defaults reproduce the reference setup:
/// 8 element pairs at half-wavelength spacing, 10 time steps, gene levels
/// 0..7, population 60 over 2000 generations with 0.95/0.05 operator
/// probabilities, 25 elites, and weights 1:6.
struct RunConfig {
    ArrayConfig array;
    MetricsConfig metrics;
    GaConfig ga;
    std::filesystem::path out_dir = "out";
    bool write_patterns = false;  // optimize also emits per-harmonic tables
    bool quiet = false;

    void validate() const;
};

/// Assigns one `key = value` setting. Keys are exactly the config field
/// names (element_pairs, grid_points, population_size, w1, ...). Returns
/// false for an unknown key; throws ConfigError on an unparseable value.
/// Setting early_stop, closeness_db, or floor_db enables the early-stop rule.
bool set_config_field(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` file, `#` comments, blank lines ignored. Unknown keys
/// and bad values raise ConfigError with the file location.
void apply_config_file(RunConfig& config, const std::filesystem::path& file);

} // namespace tma

#endif
