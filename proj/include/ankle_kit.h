/* C interface of the ankle toolkit shared library.
 *
 * Every entry point is thread-compatible: distinct ak_toolkit handles may be
 * used from distinct threads without synchronization. Strings returned by
 * accessor functions stay valid until the owning handle is destroyed or the
 * next call that replaces them (documented per function).
 */
#ifndef ANKLE_KIT_H
#define ANKLE_KIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AK_API __declspec(dllexport)
#else
#define AK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum ak_status {
    AK_OK = 0,
    AK_CONFIG_ERROR = 2,  /* malformed or inconsistent configuration/input */
    AK_NUMERIC_ERROR = 3, /* model-domain or numerical failure */
    AK_INVALID_ARGUMENT = 4
} ak_status;

typedef struct ak_toolkit ak_toolkit; /* opaque */
typedef struct ak_report ak_report;   /* opaque */

AK_API const char* ak_version(void);

AK_API ak_toolkit* ak_toolkit_create(void);
AK_API void ak_toolkit_destroy(ak_toolkit* tk);

/* Overrides the fixture directory (otherwise ANKLE_KIT_DATA or ./data). */
AK_API ak_status ak_toolkit_set_data_dir(ak_toolkit* tk, const char* dir);

/* Message of the last failed call on this handle; valid until the next
 * failure or destruction. Never NULL. */
AK_API const char* ak_toolkit_last_error(const ak_toolkit* tk);

typedef struct ak_run_options {
    const char* out_dir;       /* NULL -> "out" */
    uint64_t seed;             /* 0 -> config's seed */
    double grid_step_percent;  /* 0 -> config / built-in default */
} ak_run_options;

/* Executes one scenario: kind is one of simulate, design, sysid, control,
 * battery, or NULL/"" to trust the config. On success *out_report owns the
 * run's results and must be freed with ak_report_destroy. */
AK_API ak_status ak_toolkit_run(ak_toolkit* tk, const char* kind, const char* config_path,
                                const ak_run_options* options, ak_report** out_report);

/* Schema and invariant check without execution; diagnostics land in the
 * report. Always succeeds unless arguments are invalid. */
AK_API ak_status ak_toolkit_validate(ak_toolkit* tk, const char* config_path,
                                     ak_report** out_report);

/* Runs the whole shipped scenario set under out_dir (one directory each). */
AK_API ak_status ak_toolkit_report_suite(ak_toolkit* tk, const ak_run_options* options,
                                         ak_report** out_report);

/* Battery sizing: Ah = (energy_per_step * steps / 3600) / voltage. */
AK_API ak_status ak_battery_capacity_ah(double energy_per_step_j, double steps,
                                        double nominal_voltage_v, double* out_ah);

AK_API void ak_report_destroy(ak_report* report);
AK_API const char* ak_report_scenario_id(const ak_report* report);
AK_API const char* ak_report_kind(const ak_report* report);
AK_API const char* ak_report_config_hash(const ak_report* report);
AK_API uint64_t ak_report_seed(const ak_report* report);
/* Metrics as a JSON object, serialized. */
AK_API const char* ak_report_metrics_json(const ak_report* report);
AK_API size_t ak_report_artifact_count(const ak_report* report);
AK_API const char* ak_report_artifact_path(const ak_report* report, size_t index);
AK_API size_t ak_report_diagnostic_count(const ak_report* report);
AK_API const char* ak_report_diagnostic(const ak_report* report, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* ANKLE_KIT_H */
