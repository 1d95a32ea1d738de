#include "ankle_kit.h"

#include <string>

#include "anklekit/scenario.hpp"
#include "anklekit/version.hpp"

using anklekit::ComputeError;
using anklekit::ConfigError;

struct ak_toolkit {
    std::string data_dir;
    std::string last_error;
};

struct ak_report {
    anklekit::scenario::RunReport report;
    std::string metrics_json;
};

namespace {

ak_status fail(ak_toolkit* tk, ak_status code, const std::string& message) {
    if (tk) tk->last_error = message;
    return code;
}

anklekit::scenario::RunOptions to_options(const ak_toolkit* tk, const ak_run_options* options) {
    anklekit::scenario::RunOptions out;
    if (options) {
        if (options->out_dir && *options->out_dir) out.out_dir = options->out_dir;
        out.seed = options->seed;
        out.grid_step_percent = options->grid_step_percent;
    }
    if (tk && !tk->data_dir.empty()) out.data_dir = tk->data_dir;
    return out;
}

ak_report* wrap(anklekit::scenario::RunReport&& r) {
    auto* report = new ak_report;
    report->report = std::move(r);
    report->metrics_json = report->report.metrics.is_null()
                               ? "{}"
                               : report->report.metrics.dump(2);
    return report;
}

template <typename Fn>
ak_status guarded(ak_toolkit* tk, ak_report** out_report, Fn&& fn) {
    if (!tk || !out_report) return fail(tk, AK_INVALID_ARGUMENT, "null argument");
    *out_report = nullptr;
    try {
        *out_report = wrap(fn());
        return AK_OK;
    } catch (const ConfigError& e) {
        return fail(tk, AK_CONFIG_ERROR, e.what());
    } catch (const ComputeError& e) {
        return fail(tk, AK_NUMERIC_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(tk, AK_NUMERIC_ERROR, e.what());
    }
}

} // namespace

extern "C" {

const char* ak_version(void) { return ANKLEKIT_VERSION; }

ak_toolkit* ak_toolkit_create(void) { return new ak_toolkit; }

void ak_toolkit_destroy(ak_toolkit* tk) { delete tk; }

ak_status ak_toolkit_set_data_dir(ak_toolkit* tk, const char* dir) {
    if (!tk || !dir) return fail(tk, AK_INVALID_ARGUMENT, "null argument");
    tk->data_dir = dir;
    return AK_OK;
}

const char* ak_toolkit_last_error(const ak_toolkit* tk) {
    return tk ? tk->last_error.c_str() : "null toolkit handle";
}

ak_status ak_toolkit_run(ak_toolkit* tk, const char* kind, const char* config_path,
                         const ak_run_options* options, ak_report** out_report) {
    if (!config_path) return fail(tk, AK_INVALID_ARGUMENT, "null config path");
    return guarded(tk, out_report, [&] {
        return anklekit::scenario::run_scenario(kind ? kind : "", config_path,
                                                to_options(tk, options));
    });
}

ak_status ak_toolkit_validate(ak_toolkit* tk, const char* config_path, ak_report** out_report) {
    if (!config_path) return fail(tk, AK_INVALID_ARGUMENT, "null config path");
    return guarded(tk, out_report, [&] {
        return anklekit::scenario::validate_scenario(config_path, to_options(tk, nullptr));
    });
}

ak_status ak_toolkit_report_suite(ak_toolkit* tk, const ak_run_options* options,
                                  ak_report** out_report) {
    return guarded(tk, out_report,
                   [&] { return anklekit::scenario::run_report_suite(to_options(tk, options)); });
}

ak_status ak_battery_capacity_ah(double energy_per_step_j, double steps,
                                 double nominal_voltage_v, double* out_ah) {
    if (!out_ah) return AK_INVALID_ARGUMENT;
    try {
        *out_ah = anklekit::design::battery_capacity(energy_per_step_j, steps, nominal_voltage_v);
        return AK_OK;
    } catch (const std::exception&) {
        return AK_NUMERIC_ERROR;
    }
}

void ak_report_destroy(ak_report* report) { delete report; }

const char* ak_report_scenario_id(const ak_report* report) {
    return report ? report->report.scenario_id.c_str() : "";
}

const char* ak_report_kind(const ak_report* report) {
    return report ? report->report.kind.c_str() : "";
}

const char* ak_report_config_hash(const ak_report* report) {
    return report ? report->report.config_hash.c_str() : "";
}

uint64_t ak_report_seed(const ak_report* report) { return report ? report->report.seed : 0; }

const char* ak_report_metrics_json(const ak_report* report) {
    return report ? report->metrics_json.c_str() : "{}";
}

size_t ak_report_artifact_count(const ak_report* report) {
    return report ? report->report.artifacts.size() : 0;
}

const char* ak_report_artifact_path(const ak_report* report, size_t index) {
    if (!report || index >= report->report.artifacts.size()) return nullptr;
    return report->report.artifacts[index].c_str();
}

size_t ak_report_diagnostic_count(const ak_report* report) {
    return report ? report->report.diagnostics.size() : 0;
}

const char* ak_report_diagnostic(const ak_report* report, size_t index) {
    if (!report || index >= report->report.diagnostics.size()) return nullptr;
    return report->report.diagnostics[index].c_str();
}

} // extern "C"
