#ifndef TMA_ARRAY_MODEL_HPP
#define TMA_ARRAY_MODEL_HPP

#include <complex>
#include <span>
#include <vector>

namespace tma {

/// Geometry and modulation parameters of a symmetric 2N-element linear array.
///
/// Element pairs are counted outward from the array center; pair index p
/// (0-based) sits at +/-(2p+1)*d/2 from the center. The modulation period is
/// split into `time_steps` equal slots; during each slot every element holds
/// an integer excitation level in [0, max_gene].
struct ArrayConfig {
    int element_pairs = 8;                     // N (total elements 2N)
    double spacing_wavelengths = 0.5;          // d / lambda
    int time_steps = 10;                       // L slots per period
    int max_gene = 7;                          // top excitation level
    double modulation_period_seconds = 1e-5;   // T_p (metadata)
    double carrier_frequency_hz = 0.0;         // f_0 (metadata only)

    // tau-bar = tau / T_p = 1 / L
    double step_fraction() const { return 1.0 / time_steps; }
    double step_seconds() const { return modulation_period_seconds / time_steps; }
    // prf = 1 / T_p
    double modulation_frequency_hz() const { return 1.0 / modulation_period_seconds; }

    // Throws ConfigError on an invalid field, naming it.
    void validate() const;
};

/// Integer on-time/amplitude schedule: one row per element pair (center
/// outward), one column per time step. Flattened row-major it is the
/// chromosome the optimizer works on.
class ExcitationSchedule {
public:
    ExcitationSchedule() = default;
    ExcitationSchedule(int pairs, int steps, int fill = 0);

    static ExcitationSchedule from_rows(const std::vector<std::vector<int>>& rows);
    static ExcitationSchedule from_flat(int pairs, int steps, std::span<const int> genes);

    int pairs() const { return pairs_; }
    int steps() const { return steps_; }

    int gene(int pair, int step) const { return genes_[static_cast<size_t>(pair) * steps_ + step]; }
    void set_gene(int pair, int step, int value) { genes_[static_cast<size_t>(pair) * steps_ + step] = value; }

    std::span<const int> chromosome() const { return genes_; }
    std::span<int> chromosome() { return genes_; }
    std::span<const int> row(int pair) const {
        return std::span<const int>(genes_).subspan(static_cast<size_t>(pair) * steps_, steps_);
    }

    long gene_sum() const;
    bool all_zero() const;
    bool is_static() const;  // every row constant across time steps

    // Shape must match the config and every gene must lie in [0, max_gene];
    // throws ConfigError otherwise.
    void validate_against(const ArrayConfig& config) const;

    bool operator==(const ExcitationSchedule&) const = default;

private:
    int pairs_ = 0;
    int steps_ = 0;
    std::vector<int> genes_;
};

/// Sampled magnitude of one harmonic radiation pattern over [0, pi/2].
struct HarmonicPattern {
    int harmonic = 0;
    std::vector<double> theta_radians;
    std::vector<double> magnitude;
};

/// Uniform grid of `points` angles covering [0, pi/2] inclusive.
std::vector<double> uniform_angle_grid(int points);

/// Complex Fourier coefficient a_{m,p} of pair p's switched excitation at
/// harmonic m, including the sin(pi*m*tau)/(pi*m) prefactor. The m = 0
/// prefactor is the analytic limit tau-bar, so a_{0,p} is real and equals
/// tau-bar times the row sum.
std::complex<double> harmonic_coefficient(const ArrayConfig& config,
                                          const ExcitationSchedule& schedule,
                                          int pair, int harmonic);

/// |E_m(theta)| over the given grid: twice the magnitude of the coefficient-
/// weighted sum of cos((2p+1)*pi*(d/lambda)*sin(theta)) across pairs.
/// Coefficients are computed once per pair, not per angle. The grid must be
/// nonempty, sorted, and inside [0, pi/2].
HarmonicPattern harmonic_pattern(const ArrayConfig& config,
                                 const ExcitationSchedule& schedule,
                                 int harmonic, std::span<const double> grid);

/// Instantaneous array factor 2 * sum_p U_p(t) * cos((2p+1)*pi*(d/lambda)*
/// sin(theta)) where U_p(t) is the gene active at time t. The unit-magnitude
/// carrier phasor exp(j*2*pi*f_0*t) is omitted: it cancels in every pattern
/// magnitude this library reports. Requires 0 <= t < T_p.
std::complex<double> instantaneous_field(const ArrayConfig& config,
                                         const ExcitationSchedule& schedule,
                                         double theta_radians, double seconds);

/// Independent check of harmonic_coefficient: integrates the piecewise-
/// constant waveform against exp(-j*2*pi*m*t/T_p) in closed form per step,
/// so there is no sampling error. Agreement is at machine precision.
std::complex<double> numeric_fourier_coefficient(const ArrayConfig& config,
                                                 const ExcitationSchedule& schedule,
                                                 int pair, int harmonic);

} // namespace tma

#endif
