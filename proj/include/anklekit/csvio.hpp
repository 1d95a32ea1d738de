#pragma once

#include <string>
#include <vector>

#include "anklekit/gait.hpp"

namespace anklekit::csvio {

// Gait reference dialect, bit-exact:
//   percent,angle_deg,torque_nm_per_kg,power_w_per_kg
// comma separated, UTF-8, LF line endings, decimal point.
struct GaitCsvRow {
    double percent = 0.0;
    double angle_deg = 0.0;
    double torque_nm_per_kg = 0.0;
    double power_w_per_kg = 0.0;
};

extern const char* const kGaitCsvHeader;   // "percent,angle_deg,torque_nm_per_kg,power_w_per_kg"
extern const char* const kSignalCsvHeader; // "t_s,value"

// Parses and collects every problem instead of stopping at the first.
std::vector<GaitCsvRow> parse_gait_csv(const std::string& text,
                                       std::vector<std::string>& diagnostics);

// Throwing loader for pipelines (first problem raises ConfigError).
std::vector<GaitCsvRow> load_gait_csv(const std::string& path);

void save_gait_csv(const std::string& path, const std::vector<GaitCsvRow>& rows);

// Normalized rows -> absolute profile for a given body and cadence.
gait::GaitProfile profile_from_rows(const std::vector<GaitCsvRow>& rows, double body_mass_kg,
                                    double cadence_period_s, const std::string& speed_label);

// Signal dialect: t_s,value
struct SignalCsv {
    std::vector<double> t;
    std::vector<double> value;
};
SignalCsv load_signal_csv(const std::string& path);
void save_signal_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& value);

// Generic numeric table with an explicit header line.
void save_table_csv(const std::string& path, const std::string& header,
                    const std::vector<std::vector<double>>& columns);
std::vector<std::vector<double>> load_table_csv(const std::string& path,
                                                const std::string& expected_header);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string format_number(double v);

} // namespace anklekit::csvio
