#ifndef TMA_PATTERN_METRICS_HPP
#define TMA_PATTERN_METRICS_HPP

#include "tma/array_model.hpp"

#include <utility>
#include <vector>

namespace tma {

struct MetricsConfig {
    int grid_points = 2001;            // uniform in theta over [0, pi/2]
    int sideband_count = 10;           // harmonics 1..n_max enter the SBL
    double suppression_clamp_db = 240; // stands in for -inf dB peaks
    bool refine_extrema = true;        // parabolic step through each peak triple

    void validate() const;
};

/// A stationary maximum of a sampled pattern.
struct Peak {
    double angle = 0.0;
    double magnitude = 0.0;
};

/// Interior grid points strictly above both neighbours (first point of a
/// plateau), plus an endpoint when it exceeds its single neighbour. With
/// `refine`, each strict interior peak moves to the vertex of the parabola
/// through its three samples, clamped to the bracketing interval.
std::vector<Peak> find_local_maxima(const HarmonicPattern& pattern, bool refine);

struct PatternMetrics {
    double main_beam_db = 0.0;                      // 20*log10|E_0(0)|
    double sll_suppression_db = 0.0;                // positive dB below main beam
    double sbl_suppression_db = 0.0;                // min across sidebands
    std::vector<double> per_sideband_suppression_db;
    std::vector<double> sidelobe_angles;            // m = 0 sidelobe peak angles
};

/// Precomputes the angle grid, the per-pair cosine table, and the per-
/// harmonic step phases for one (ArrayConfig, MetricsConfig) pair, then
/// evaluates schedules against them. Evaluation is pure and const, so one
/// evaluator can serve many threads.
class MetricsEvaluator {
public:
    MetricsEvaluator(const ArrayConfig& array, const MetricsConfig& metrics);

    const ArrayConfig& array_config() const { return array_; }
    const MetricsConfig& metrics_config() const { return metrics_; }
    std::span<const double> grid() const { return grid_; }

    /// Full metrics bundle. Throws DegenerateInputError on an all-zero schedule.
    PatternMetrics evaluate(const ExcitationSchedule& schedule) const;

    /// Sampled |E_m| over the cached grid.
    HarmonicPattern pattern(const ExcitationSchedule& schedule, int harmonic) const;

private:
    void fill_magnitudes(const ExcitationSchedule& schedule, int harmonic,
                         std::vector<double>& out) const;

    ArrayConfig array_;
    MetricsConfig metrics_;
    std::vector<double> grid_;
    std::vector<double> cos_table_;                   // grid_points x pairs, row-major
    std::vector<std::complex<double>> step_phase_;    // (n_max+1) x time_steps
    std::vector<double> prefactor_;                   // per harmonic 0..n_max
};

/// Weighted fitness w1 * SLL + w2 * SBL of an already-computed bundle.
double combined_fitness(const PatternMetrics& metrics, double w1, double w2);

/// SLL suppression of the centre-frequency pattern: main beam at broadside
/// minus the highest stationary peak beyond the first null, clamped at
/// `suppression_clamp_db` when no sidelobe exists. Also returns the retained
/// sidelobe peak angles.
std::pair<double, std::vector<double>> compute_sll(const ArrayConfig& array,
                                                   const ExcitationSchedule& schedule,
                                                   const MetricsConfig& metrics);

/// SBL suppression: for each sideband n in 1..n_max the global pattern peak
/// (broadside and endpoints included) relative to the centre-frequency main
/// beam; returns the minimum and the per-sideband list. Negative harmonics
/// mirror positive ones by conjugate symmetry and are not recomputed.
std::pair<double, std::vector<double>> compute_sbl(const ArrayConfig& array,
                                                   const ExcitationSchedule& schedule,
                                                   const MetricsConfig& metrics);

/// w1 * SLL + w2 * SBL (both positive suppressions, so larger is better),
/// plus the full metrics bundle. Throws ConfigError when both weights are
/// zero or either is negative.
std::pair<double, PatternMetrics> fitness(const ArrayConfig& array,
                                          const ExcitationSchedule& schedule,
                                          double w1, double w2,
                                          const MetricsConfig& metrics);

} // namespace tma

#endif
