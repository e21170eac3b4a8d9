#include "tma/schedule_io.hpp"
#include "tma/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace tma {

namespace {

std::string location(std::string_view source, int line, int column) {
    std::string s(source);
    s += ":" + std::to_string(line);
    if (column > 0) s += ":" + std::to_string(column);
    return s;
}

std::ofstream open_output(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw ConfigError("cannot open " + file.string() + " for writing");
    return out;
}

std::string format_db(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

} // namespace

ExcitationSchedule parse_schedule(std::istream& in, std::string_view source_name) {
    std::vector<std::vector<int>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);

        std::vector<int> row;
        size_t pos = 0;
        bool expects_value = false;
        while (pos < line.size() || expects_value) {
            const size_t start = line.find_first_not_of(" \t\r", pos);
            const size_t token_col = (start == std::string::npos ? line.size() : start) + 1;
            size_t end = (start == std::string::npos) ? std::string::npos : line.find(',', start);
            std::string token = (start == std::string::npos)
                                    ? std::string()
                                    : line.substr(start, (end == std::string::npos ? line.size() : end) - start);
            while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
                token.pop_back();
            }
            if (token.empty()) {
                if (expects_value || end != std::string::npos) {
                    throw ConfigError(location(source_name, line_no, static_cast<int>(token_col)) +
                                      ": expected an integer gene value");
                }
                break;  // trailing whitespace only
            }
            size_t used = 0;
            int value = 0;
            try {
                value = std::stoi(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size()) {
                throw ConfigError(location(source_name, line_no, static_cast<int>(token_col)) +
                                  ": '" + token + "' is not an integer gene value");
            }
            row.push_back(value);
            expects_value = end != std::string::npos;
            pos = (end == std::string::npos) ? line.size() : end + 1;
        }
        if (row.empty()) continue;  // blank or comment-only line
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ConfigError(location(source_name, line_no, 0) + ": row has " +
                              std::to_string(row.size()) + " entries, previous rows have " +
                              std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ConfigError(std::string(source_name) + ": no schedule rows found");
    }
    return ExcitationSchedule::from_rows(rows);
}

ExcitationSchedule read_schedule(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open schedule file " + file.string());
    return parse_schedule(in, file.string());
}

void write_schedule(const std::filesystem::path& file, const ExcitationSchedule& schedule) {
    std::ofstream out = open_output(file);
    out << "# excitation schedule: rows = element pairs (center outward), columns = time steps\n";
    for (int p = 0; p < schedule.pairs(); ++p) {
        for (int q = 0; q < schedule.steps(); ++q) {
            if (q > 0) out << ',';
            out << schedule.gene(p, q);
        }
        out << '\n';
    }
}

void write_pattern_csv(const std::filesystem::path& file, const HarmonicPattern& pattern,
                       double reference_magnitude, double floor_db) {
    std::ofstream out = open_output(file);
    out << "theta_deg,magnitude_db\n";
    const double floor_magnitude = reference_magnitude * std::pow(10.0, -floor_db / 20.0);
    for (size_t i = 0; i < pattern.theta_radians.size(); ++i) {
        const double deg = pattern.theta_radians[i] * 180.0 / std::numbers::pi;
        double db = -floor_db;
        if (pattern.magnitude[i] > floor_magnitude) {
            db = 20.0 * std::log10(pattern.magnitude[i] / reference_magnitude);
        }
        out << format_db(deg) << ',' << format_db(db) << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& file, const GaTrace& trace) {
    std::ofstream out = open_output(file);
    out << "generation,best_fitness,avg_fitness,best_sll_db,best_sbl_db,survivors\n";
    for (const GaTraceRow& row : trace) {
        out << row.generation << ',' << format_db(row.best_fitness) << ','
            << format_db(row.average_fitness) << ',' << format_db(-row.best_sll_suppression_db)
            << ',' << format_db(-row.best_sbl_suppression_db) << ',' << row.survivor_count << '\n';
    }
}

namespace {

void metrics_report_lines(std::ostream& out, const PatternMetrics& metrics,
                          const ArrayConfig& array) {
    out << "main_beam_db = " << format_db(metrics.main_beam_db) << '\n';
    out << "sll_db = " << format_db(-metrics.sll_suppression_db) << '\n';
    out << "sbl_db = " << format_db(-metrics.sbl_suppression_db) << '\n';
    out << "sidelobe_angles_deg =";
    for (size_t i = 0; i < metrics.sidelobe_angles.size(); ++i) {
        out << (i ? "," : "") << ' ' << format_db(metrics.sidelobe_angles[i] * 180.0 / std::numbers::pi);
    }
    out << '\n';
    const double prf = array.modulation_frequency_hz();
    for (size_t n = 1; n <= metrics.per_sideband_suppression_db.size(); ++n) {
        out << "sideband_db_" << n << " = "
            << format_db(-metrics.per_sideband_suppression_db[n - 1]);
        if (array.carrier_frequency_hz > 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.0f", array.carrier_frequency_hz + n * prf);
            out << "  # at " << buf << " Hz";
        }
        out << '\n';
    }
}

} // namespace

void write_metrics_report(const std::filesystem::path& file, const PatternMetrics& metrics,
                          const ArrayConfig& array) {
    std::ofstream out = open_output(file);
    out << "# pattern metrics (dB levels relative to the m=0 main beam; negative = suppressed)\n";
    metrics_report_lines(out, metrics, array);
}

void print_metrics_report(std::ostream& out, const PatternMetrics& metrics,
                          const ArrayConfig& array) {
    metrics_report_lines(out, metrics, array);
}

} // namespace tma
