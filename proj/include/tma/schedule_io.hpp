#ifndef TMA_SCHEDULE_IO_HPP
#define TMA_SCHEDULE_IO_HPP

#include "tma/array_model.hpp"
#include "tma/ga_optimizer.hpp"
#include "tma/pattern_metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace tma {

/// Schedule files are plain text: one row per element pair (center outward),
/// comma-separated integer levels, one column per time step. `#` starts a
/// comment, blank lines are skipped. Parse errors carry line and column.
ExcitationSchedule parse_schedule(std::istream& in, std::string_view source_name);
ExcitationSchedule read_schedule(const std::filesystem::path& file);
void write_schedule(const std::filesystem::path& file, const ExcitationSchedule& schedule);

/// One pattern table per harmonic: `theta_deg,magnitude_db` rows, six decimal
/// places, magnitudes normalized to `reference_magnitude` (the m = 0 main
/// beam) and floored at -floor_db for numerically-zero samples.
void write_pattern_csv(const std::filesystem::path& file, const HarmonicPattern& pattern,
                       double reference_magnitude, double floor_db);

/// Convergence trace: generation, best/average fitness, best member's SLL and
/// SBL in display (negative-dB) convention, and the survivor count.
void write_trace_csv(const std::filesystem::path& file, const GaTrace& trace);

/// Key = value metrics summary in display convention (dB levels negative).
/// When the carrier frequency is set, sideband rows carry their absolute
/// frequency f_0 + n * prf as a trailing comment.
void write_metrics_report(const std::filesystem::path& file, const PatternMetrics& metrics,
                          const ArrayConfig& array);
void print_metrics_report(std::ostream& out, const PatternMetrics& metrics,
                          const ArrayConfig& array);

} // namespace tma

#endif
