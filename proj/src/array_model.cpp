#include "tma/array_model.hpp"
#include "tma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace tma {

namespace {

void check_pair_index(const ArrayConfig& config, int pair) {
    if (pair < 0 || pair >= config.element_pairs) {
        throw ConfigError("element pair index " + std::to_string(pair) +
                          " outside [0, " + std::to_string(config.element_pairs - 1) + "]");
    }
}

} // namespace

void ArrayConfig::validate() const {
    if (element_pairs < 1) throw ConfigError("element_pairs must be >= 1");
    if (time_steps < 1) throw ConfigError("time_steps must be >= 1");
    if (max_gene < 1) throw ConfigError("max_gene must be >= 1");
    if (!(spacing_wavelengths > 0.0)) throw ConfigError("spacing_wavelengths must be > 0");
    if (!(modulation_period_seconds > 0.0)) throw ConfigError("modulation_period_seconds must be > 0");
    if (carrier_frequency_hz < 0.0) throw ConfigError("carrier_frequency_hz must be >= 0");
}

ExcitationSchedule::ExcitationSchedule(int pairs, int steps, int fill)
    : pairs_(pairs), steps_(steps), genes_(static_cast<size_t>(pairs) * steps, fill) {
    if (pairs < 1 || steps < 1) throw ConfigError("schedule dimensions must be positive");
}

ExcitationSchedule ExcitationSchedule::from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows.front().empty()) throw ConfigError("schedule needs at least one row and one column");
    ExcitationSchedule s(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (size_t p = 0; p < rows.size(); ++p) {
        if (rows[p].size() != rows.front().size()) {
            throw ConfigError("schedule row " + std::to_string(p + 1) + " has " +
                              std::to_string(rows[p].size()) + " entries, expected " +
                              std::to_string(rows.front().size()));
        }
        for (size_t q = 0; q < rows[p].size(); ++q) s.set_gene(static_cast<int>(p), static_cast<int>(q), rows[p][q]);
    }
    return s;
}

ExcitationSchedule ExcitationSchedule::from_flat(int pairs, int steps, std::span<const int> genes) {
    ExcitationSchedule s(pairs, steps);
    if (genes.size() != s.genes_.size()) {
        throw ConfigError("chromosome length " + std::to_string(genes.size()) + " does not match " +
                          std::to_string(pairs) + "x" + std::to_string(steps));
    }
    std::copy(genes.begin(), genes.end(), s.genes_.begin());
    return s;
}

long ExcitationSchedule::gene_sum() const {
    return std::accumulate(genes_.begin(), genes_.end(), 0L);
}

bool ExcitationSchedule::all_zero() const {
    return std::all_of(genes_.begin(), genes_.end(), [](int g) { return g == 0; });
}

bool ExcitationSchedule::is_static() const {
    for (int p = 0; p < pairs_; ++p) {
        const auto r = row(p);
        if (std::adjacent_find(r.begin(), r.end(), std::not_equal_to<>()) != r.end()) return false;
    }
    return true;
}

void ExcitationSchedule::validate_against(const ArrayConfig& config) const {
    if (pairs_ != config.element_pairs || steps_ != config.time_steps) {
        throw ConfigError("schedule shape " + std::to_string(pairs_) + "x" + std::to_string(steps_) +
                          " does not match configured " + std::to_string(config.element_pairs) + "x" +
                          std::to_string(config.time_steps));
    }
    for (int p = 0; p < pairs_; ++p) {
        for (int q = 0; q < steps_; ++q) {
            const int g = gene(p, q);
            if (g < 0 || g > config.max_gene) {
                throw ConfigError("gene at pair " + std::to_string(p + 1) + ", step " + std::to_string(q + 1) +
                                  " is " + std::to_string(g) + ", outside [0, " +
                                  std::to_string(config.max_gene) + "]");
            }
        }
    }
}

std::vector<double> uniform_angle_grid(int points) {
    if (points < 2) throw ConfigError("angle grid needs at least 2 points");
    std::vector<double> grid(points);
    const double half_pi = std::numbers::pi / 2.0;
    for (int i = 0; i < points; ++i) grid[i] = half_pi * i / (points - 1);
    grid.back() = half_pi;
    return grid;
}

std::complex<double> harmonic_coefficient(const ArrayConfig& config,
                                          const ExcitationSchedule& schedule,
                                          int pair, int harmonic) {
    schedule.validate_against(config);
    check_pair_index(config, pair);

    const double tau = config.step_fraction();
    if (harmonic == 0) {
        // Analytic limit of sin(pi*m*tau)/(pi*m) at m = 0 is tau itself.
        double sum = 0.0;
        for (int q = 0; q < config.time_steps; ++q) sum += schedule.gene(pair, q);
        return {tau * sum, 0.0};
    }

    const double prefactor = std::sin(std::numbers::pi * harmonic * tau) / (std::numbers::pi * harmonic);
    std::complex<double> sum = 0.0;
    for (int q = 0; q < config.time_steps; ++q) {
        const double phase = -std::numbers::pi * harmonic * tau * (2 * q + 1);
        sum += static_cast<double>(schedule.gene(pair, q)) * std::polar(1.0, phase);
    }
    return prefactor * sum;
}

HarmonicPattern harmonic_pattern(const ArrayConfig& config,
                                 const ExcitationSchedule& schedule,
                                 int harmonic, std::span<const double> grid) {
    schedule.validate_against(config);
    if (grid.empty()) throw ConfigError("angle grid is empty");
    const double half_pi = std::numbers::pi / 2.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > half_pi) throw ConfigError("angle grid leaves [0, pi/2]");
        if (i > 0 && grid[i] <= grid[i - 1]) throw ConfigError("angle grid is not strictly increasing");
    }

    const int n = config.element_pairs;
    std::vector<std::complex<double>> coeff(n);
    for (int p = 0; p < n; ++p) coeff[p] = harmonic_coefficient(config, schedule, p, harmonic);

    HarmonicPattern pattern;
    pattern.harmonic = harmonic;
    pattern.theta_radians.assign(grid.begin(), grid.end());
    pattern.magnitude.resize(grid.size());
    const double kd = std::numbers::pi * config.spacing_wavelengths;
    for (size_t i = 0; i < grid.size(); ++i) {
        const double s = std::sin(grid[i]);
        std::complex<double> acc = 0.0;
        for (int p = 0; p < n; ++p) acc += coeff[p] * std::cos((2 * p + 1) * kd * s);
        pattern.magnitude[i] = 2.0 * std::abs(acc);
    }
    return pattern;
}

std::complex<double> instantaneous_field(const ArrayConfig& config,
                                         const ExcitationSchedule& schedule,
                                         double theta_radians, double seconds) {
    schedule.validate_against(config);
    if (seconds < 0.0 || seconds >= config.modulation_period_seconds) {
        throw ConfigError("time " + std::to_string(seconds) + " s outside [0, T_p)");
    }
    int step = static_cast<int>(seconds * config.time_steps / config.modulation_period_seconds);
    step = std::min(step, config.time_steps - 1);

    const double kd = std::numbers::pi * config.spacing_wavelengths;
    const double s = std::sin(theta_radians);
    double acc = 0.0;
    for (int p = 0; p < config.element_pairs; ++p) {
        acc += schedule.gene(p, step) * std::cos((2 * p + 1) * kd * s);
    }
    return {2.0 * acc, 0.0};
}

std::complex<double> numeric_fourier_coefficient(const ArrayConfig& config,
                                                 const ExcitationSchedule& schedule,
                                                 int pair, int harmonic) {
    schedule.validate_against(config);
    check_pair_index(config, pair);

    const double tau = config.step_fraction();
    if (harmonic == 0) {
        double sum = 0.0;
        for (int q = 0; q < config.time_steps; ++q) sum += schedule.gene(pair, q);
        return {tau * sum, 0.0};
    }

    // Integral of g_q * exp(-j*2*pi*m*t/T_p) over step q, normalized by T_p:
    // g_q * (exp(-j*w*t1) - exp(-j*w*t2)) / (j*w*T_p) with w = 2*pi*m/T_p and
    // t in units of the period, so each step spans [q*tau, (q+1)*tau].
    const double w = 2.0 * std::numbers::pi * harmonic;
    const std::complex<double> jw(0.0, w);
    std::complex<double> acc = 0.0;
    for (int q = 0; q < config.time_steps; ++q) {
        const int g = schedule.gene(pair, q);
        if (g == 0) continue;
        const std::complex<double> lo = std::exp(-jw * (q * tau));
        const std::complex<double> hi = std::exp(-jw * ((q + 1) * tau));
        acc += static_cast<double>(g) * (lo - hi);
    }
    return acc / jw;
}

} // namespace tma
