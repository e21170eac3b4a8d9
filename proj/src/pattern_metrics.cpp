#include "tma/pattern_metrics.hpp"
#include "tma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tma {

namespace {

constexpr double kNullFloor = 1e-9;  // relative magnitude treated as a pattern null

// Parabola through three samples bracketing a strict peak; returns the vertex
// clamped to [x0, x2]. Handles non-uniform spacing.
Peak refine_peak(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d1 = x1 - x0;
    const double d2 = x2 - x1;
    const double u = y0 - y1;
    const double v = y2 - y1;
    const double denom = d1 * d2 * (d1 + d2);
    const double a = (u * d2 + v * d1) / denom;
    if (!(a < 0.0)) return {x1, y1};  // flat triple, keep the sample
    const double b = (v * d1 * d1 - u * d2 * d2) / denom;
    double x = x1 - b / (2.0 * a);
    x = std::clamp(x, x0, x2);
    const double dx = x - x1;
    return {x, y1 + b * dx + a * dx * dx};
}

// Shared scan used by find_local_maxima and the metrics evaluator.
void scan_local_maxima(std::span<const double> theta, std::span<const double> mag,
                       bool refine, std::vector<Peak>& out) {
    out.clear();
    const size_t n = theta.size();
    if (mag[0] > mag[1]) out.push_back({theta[0], mag[0]});
    for (size_t i = 1; i + 1 < n; ++i) {
        if (!(mag[i] > mag[i - 1])) continue;
        size_t j = i;
        while (j + 1 < n && mag[j + 1] == mag[i]) ++j;
        if (j + 1 >= n) break;  // plateau runs into the right endpoint
        if (mag[i] > mag[j + 1]) {
            if (refine && j == i) {
                out.push_back(refine_peak(theta[i - 1], mag[i - 1], theta[i], mag[i],
                                          theta[i + 1], mag[i + 1]));
            } else {
                out.push_back({theta[i], mag[i]});  // plateau keeps its first point
            }
        }
        i = j;
    }
    if (mag[n - 1] > mag[n - 2]) out.push_back({theta[n - 1], mag[n - 1]});
}

// Index of the first null after the broadside main beam: the first interior
// strict local minimum, or the first point numerically indistinguishable
// from zero. Returns npos when the pattern never comes down.
size_t first_null_index(std::span<const double> mag, double main_beam) {
    const size_t n = mag.size();
    const double floor = kNullFloor * main_beam;
    for (size_t i = 1; i < n; ++i) {
        if (mag[i] < floor) return i;
        if (i + 1 < n && mag[i] < mag[i - 1] && mag[i] < mag[i + 1]) return i;
    }
    return static_cast<size_t>(-1);
}

} // namespace

void MetricsConfig::validate() const {
    if (grid_points < 3) throw ConfigError("grid_points must be >= 3");
    if (sideband_count < 1) throw ConfigError("sideband_count must be >= 1");
    if (!(suppression_clamp_db > 0.0)) throw ConfigError("suppression_clamp_db must be > 0");
}

std::vector<Peak> find_local_maxima(const HarmonicPattern& pattern, bool refine) {
    if (pattern.theta_radians.size() < 3) throw ConfigError("pattern grid has fewer than 3 points");
    if (pattern.theta_radians.size() != pattern.magnitude.size()) {
        throw ConfigError("pattern grid and magnitude lengths differ");
    }
    std::vector<Peak> peaks;
    scan_local_maxima(pattern.theta_radians, pattern.magnitude, refine, peaks);
    return peaks;
}

MetricsEvaluator::MetricsEvaluator(const ArrayConfig& array, const MetricsConfig& metrics)
    : array_(array), metrics_(metrics) {
    array_.validate();
    metrics_.validate();
    if (array_.element_pairs > 64) throw ConfigError("element_pairs above 64 is not supported");
    grid_ = uniform_angle_grid(metrics_.grid_points);

    const int pairs = array_.element_pairs;
    const double kd = std::numbers::pi * array_.spacing_wavelengths;
    cos_table_.resize(grid_.size() * pairs);
    for (size_t i = 0; i < grid_.size(); ++i) {
        const double s = std::sin(grid_[i]);
        for (int p = 0; p < pairs; ++p) cos_table_[i * pairs + p] = std::cos((2 * p + 1) * kd * s);
    }

    const int steps = array_.time_steps;
    const double tau = array_.step_fraction();
    const int harmonics = metrics_.sideband_count + 1;
    step_phase_.resize(static_cast<size_t>(harmonics) * steps);
    prefactor_.resize(harmonics);
    prefactor_[0] = tau;
    for (int m = 0; m < harmonics; ++m) {
        if (m > 0) prefactor_[m] = std::sin(std::numbers::pi * m * tau) / (std::numbers::pi * m);
        for (int q = 0; q < steps; ++q) {
            step_phase_[static_cast<size_t>(m) * steps + q] =
                std::polar(1.0, -std::numbers::pi * m * tau * (2 * q + 1));
        }
    }
}

void MetricsEvaluator::fill_magnitudes(const ExcitationSchedule& schedule, int harmonic,
                                       std::vector<double>& out) const {
    const int pairs = array_.element_pairs;
    const int steps = array_.time_steps;
    const std::complex<double>* phase = &step_phase_[static_cast<size_t>(harmonic) * steps];
    const double pref = prefactor_[harmonic];

    double re[64], im[64];  // element_pairs is validated small; stack scratch
    for (int p = 0; p < pairs; ++p) {
        std::complex<double> acc = 0.0;
        for (int q = 0; q < steps; ++q) acc += static_cast<double>(schedule.gene(p, q)) * phase[q];
        re[p] = pref * acc.real();
        im[p] = pref * acc.imag();
    }

    out.resize(grid_.size());
    for (size_t i = 0; i < grid_.size(); ++i) {
        const double* c = &cos_table_[i * pairs];
        double sr = 0.0, si = 0.0;
        for (int p = 0; p < pairs; ++p) {
            sr += re[p] * c[p];
            si += im[p] * c[p];
        }
        out[i] = 2.0 * std::sqrt(sr * sr + si * si);
    }
}

HarmonicPattern MetricsEvaluator::pattern(const ExcitationSchedule& schedule, int harmonic) const {
    schedule.validate_against(array_);
    if (harmonic < 0 || harmonic > metrics_.sideband_count) {
        throw ConfigError("harmonic " + std::to_string(harmonic) + " outside cached range 0.." +
                          std::to_string(metrics_.sideband_count));
    }
    HarmonicPattern p;
    p.harmonic = harmonic;
    p.theta_radians = grid_;
    fill_magnitudes(schedule, harmonic, p.magnitude);
    return p;
}

PatternMetrics MetricsEvaluator::evaluate(const ExcitationSchedule& schedule) const {
    schedule.validate_against(array_);
    if (schedule.all_zero()) {
        throw DegenerateInputError("all-zero schedule: the main beam vanishes and SLL/SBL are undefined");
    }

    PatternMetrics result;
    std::vector<double> mag;
    std::vector<Peak> peaks;

    fill_magnitudes(schedule, 0, mag);
    const double main_beam = mag[0];  // broadside tops the centre-frequency pattern
    result.main_beam_db = 20.0 * std::log10(main_beam);

    const double clamp = metrics_.suppression_clamp_db;
    const double zero_floor = main_beam * std::pow(10.0, -clamp / 20.0);

    // SLL: highest stationary peak beyond the first null around broadside.
    const size_t null_idx = first_null_index(mag, main_beam);
    result.sll_suppression_db = clamp;
    if (null_idx != static_cast<size_t>(-1)) {
        scan_local_maxima(grid_, mag, metrics_.refine_extrema, peaks);
        const double null_angle = grid_[null_idx];
        double top = 0.0;
        for (const Peak& pk : peaks) {
            if (pk.angle <= null_angle) continue;
            result.sidelobe_angles.push_back(pk.angle);
            top = std::max(top, pk.magnitude);
        }
        if (top > zero_floor) {
            result.sll_suppression_db =
                std::min(clamp, result.main_beam_db - 20.0 * std::log10(top));
        }
    }

    // SBL: global peak of each sideband pattern, broadside and endpoints
    // included, relative to the centre-frequency main beam.
    result.per_sideband_suppression_db.resize(metrics_.sideband_count);
    result.sbl_suppression_db = clamp;
    for (int m = 1; m <= metrics_.sideband_count; ++m) {
        fill_magnitudes(schedule, m, mag);
        double top = std::max(mag.front(), mag.back());
        scan_local_maxima(grid_, mag, metrics_.refine_extrema, peaks);
        for (const Peak& pk : peaks) top = std::max(top, pk.magnitude);
        double sup = clamp;
        if (top > zero_floor) sup = std::min(clamp, result.main_beam_db - 20.0 * std::log10(top));
        result.per_sideband_suppression_db[m - 1] = sup;
        result.sbl_suppression_db = std::min(result.sbl_suppression_db, sup);
    }
    return result;
}

double combined_fitness(const PatternMetrics& metrics, double w1, double w2) {
    return w1 * metrics.sll_suppression_db + w2 * metrics.sbl_suppression_db;
}

std::pair<double, std::vector<double>> compute_sll(const ArrayConfig& array,
                                                   const ExcitationSchedule& schedule,
                                                   const MetricsConfig& metrics) {
    const PatternMetrics m = MetricsEvaluator(array, metrics).evaluate(schedule);
    return {m.sll_suppression_db, m.sidelobe_angles};
}

std::pair<double, std::vector<double>> compute_sbl(const ArrayConfig& array,
                                                   const ExcitationSchedule& schedule,
                                                   const MetricsConfig& metrics) {
    const PatternMetrics m = MetricsEvaluator(array, metrics).evaluate(schedule);
    return {m.sbl_suppression_db, m.per_sideband_suppression_db};
}

std::pair<double, PatternMetrics> fitness(const ArrayConfig& array,
                                          const ExcitationSchedule& schedule,
                                          double w1, double w2,
                                          const MetricsConfig& metrics) {
    if (w1 < 0.0 || w2 < 0.0) throw ConfigError("fitness weights must be nonnegative");
    if (w1 == 0.0 && w2 == 0.0) throw ConfigError("fitness weights must not both be zero");
    PatternMetrics m = MetricsEvaluator(array, metrics).evaluate(schedule);
    const double value = combined_fitness(m, w1, w2);
    return {value, std::move(m)};
}

} // namespace tma
