#include "anklekit/csvio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace anklekit::csvio {

const char* const kGaitCsvHeader = "percent,angle_deg,torque_nm_per_kg,power_w_per_kg";
const char* const kSignalCsvHeader = "t_s,value";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
    if (!out) throw ConfigError("write failed: " + path);
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

bool parse_fields(const std::string& line, std::size_t expected, std::vector<double>& out,
                  std::string& problem) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string field =
            line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            const double v = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
            out.push_back(v);
        } catch (const std::exception&) {
            problem = "not a number: '" + field + "'";
            return false;
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.size() != expected) {
        problem = "expected " + std::to_string(expected) + " fields, got " +
                  std::to_string(out.size());
        return false;
    }
    return true;
}

} // namespace

std::vector<GaitCsvRow> parse_gait_csv(const std::string& text,
                                       std::vector<std::string>& diagnostics) {
    std::vector<GaitCsvRow> rows;
    const auto lines = split_lines(text);
    if (lines.empty()) {
        diagnostics.push_back("empty file");
        return rows;
    }
    if (lines[0] != kGaitCsvHeader) {
        diagnostics.push_back("bad header: expected '" + std::string(kGaitCsvHeader) +
                              "', got '" + lines[0] + "'");
    }
    double prev_percent = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<double> f;
        std::string problem;
        const std::string where = "row " + std::to_string(i + 1);
        if (!parse_fields(lines[i], 4, f, problem)) {
            diagnostics.push_back(where + ": " + problem);
            continue;
        }
        if (f[0] <= prev_percent)
            diagnostics.push_back(where + ": percent " + format_number(f[0]) +
                                  " not strictly increasing");
        prev_percent = f[0];
        rows.push_back({f[0], f[1], f[2], f[3]});
    }
    if (!rows.empty()) {
        if (rows.front().percent != 0.0) diagnostics.push_back("first percent must be 0");
        if (rows.back().percent != 100.0) diagnostics.push_back("last percent must be 100");
    }
    if (rows.size() < 20 && !rows.empty())
        diagnostics.push_back("need at least 20 samples, got " + std::to_string(rows.size()));
    return rows;
}

std::vector<GaitCsvRow> load_gait_csv(const std::string& path) {
    std::vector<std::string> diagnostics;
    const auto rows = parse_gait_csv(read_file(path), diagnostics);
    if (!diagnostics.empty())
        throw ConfigError(path + ": " + diagnostics.front());
    return rows;
}

void save_gait_csv(const std::string& path, const std::vector<GaitCsvRow>& rows) {
    std::ostringstream os;
    os << kGaitCsvHeader << '\n';
    for (const auto& r : rows) {
        os << format_number(r.percent) << ',' << format_number(r.angle_deg) << ','
           << format_number(r.torque_nm_per_kg) << ',' << format_number(r.power_w_per_kg)
           << '\n';
    }
    write_file(path, os.str());
}

gait::GaitProfile profile_from_rows(const std::vector<GaitCsvRow>& rows, double body_mass_kg,
                                    double cadence_period_s, const std::string& speed_label) {
    gait::GaitProfile profile;
    profile.body_mass = body_mass_kg;
    profile.cadence_period = cadence_period_s;
    profile.speed_label = speed_label;
    profile.samples.reserve(rows.size());
    for (const auto& r : rows) {
        gait::GaitSample s;
        s.percent = r.percent;
        s.angle = r.angle_deg * M_PI / 180.0;
        s.torque = r.torque_nm_per_kg * body_mass_kg;
        s.power = r.power_w_per_kg * body_mass_kg;
        profile.samples.push_back(s);
    }
    profile.validate();
    return profile;
}

SignalCsv load_signal_csv(const std::string& path) {
    const auto cols = load_table_csv(path, kSignalCsvHeader);
    return {cols[0], cols[1]};
}

void save_signal_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& value) {
    if (t.size() != value.size()) throw ComputeError("signal csv: length mismatch");
    save_table_csv(path, kSignalCsvHeader, {t, value});
}

void save_table_csv(const std::string& path, const std::string& header,
                    const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) throw ComputeError("table csv: no columns");
    const std::size_t n = columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != n) throw ComputeError("table csv: ragged columns");
    }
    std::ostringstream os;
    os << header << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j) os << ',';
            os << format_number(columns[j][i]);
        }
        os << '\n';
    }
    write_file(path, os.str());
}

std::vector<std::vector<double>> load_table_csv(const std::string& path,
                                                const std::string& expected_header) {
    const auto lines = split_lines(read_file(path));
    if (lines.empty()) throw ConfigError(path + ": empty file");
    if (lines[0] != expected_header)
        throw ConfigError(path + ": bad header, expected '" + expected_header + "'");
    const std::size_t ncols = std::count(expected_header.begin(), expected_header.end(), ',') + 1;
    std::vector<std::vector<double>> cols(ncols);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<double> f;
        std::string problem;
        if (!parse_fields(lines[i], ncols, f, problem))
            throw ConfigError(path + ": row " + std::to_string(i + 1) + ": " + problem);
        for (std::size_t j = 0; j < ncols; ++j) cols[j].push_back(f[j]);
    }
    return cols;
}

} // namespace anklekit::csvio
