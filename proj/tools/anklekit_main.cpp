// Command-line front end. Talks to the toolkit exclusively through the
// shared library's C interface (ankle_kit.h).
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "ankle_kit.h"

namespace {

struct ToolkitHandle {
    ak_toolkit* tk = ak_toolkit_create();
    ~ToolkitHandle() { ak_toolkit_destroy(tk); }
};

struct ReportHandle {
    ak_report* r = nullptr;
    ~ReportHandle() { ak_report_destroy(r); }
};

void print_report(const ak_report* r) {
    std::printf("scenario:    %s (%s)\n", ak_report_scenario_id(r), ak_report_kind(r));
    std::printf("config hash: %s\n", ak_report_config_hash(r));
    std::printf("seed:        %llu\n",
                static_cast<unsigned long long>(ak_report_seed(r)));
    std::printf("metrics:\n%s\n", ak_report_metrics_json(r));
    const size_t n = ak_report_artifact_count(r);
    if (n) {
        std::printf("artifacts:\n");
        for (size_t i = 0; i < n; ++i)
            std::printf("  %s\n", ak_report_artifact_path(r, i));
    }
}

int run_kind(ToolkitHandle& tk, const char* kind, const std::string& config,
             const std::string& out, std::uint64_t seed, double grid_step,
             const std::string& data_dir) {
    if (!data_dir.empty()) ak_toolkit_set_data_dir(tk.tk, data_dir.c_str());
    ak_run_options options{out.c_str(), seed, grid_step};
    ReportHandle report;
    const ak_status status = ak_toolkit_run(tk.tk, kind, config.c_str(), &options, &report.r);
    if (status != AK_OK) {
        std::fprintf(stderr, "error: %s\n", ak_toolkit_last_error(tk.tk));
        return status;
    }
    print_report(report.r);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ankle-kit: simulation, design, identification and control toolkit "
                 "for a dual energy-store-and-release robotic ankle"};
    app.require_subcommand(1);

    std::string config, out = "out", data_dir, input_csv;
    std::uint64_t seed = 0;
    double grid_step = 0.0;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt = sub->add_option("--config", config, "scenario config (JSON)");
        if (need_config) opt->required();
        sub->add_option("--out", out, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "seed recorded in the run report");
        sub->add_option("--grid-step", grid_step, "trace grid step in percent of the cycle");
        sub->add_option("--data", data_dir,
                        "fixture directory (overrides the ANKLE_KIT_DATA variable)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "gait-cycle torque/power simulation");
    add_common(simulate, true);
    CLI::App* design_cmd = app.add_subcommand("design", "spring fitting and energy budgeting");
    add_common(design_cmd, true);
    CLI::App* sysid_cmd = app.add_subcommand("sysid", "chirp identification of a 2nd-order model");
    add_common(sysid_cmd, false);
    sysid_cmd->add_option("--input", input_csv, "io table (t_s,u,y) to identify instead of a config");
    CLI::App* control_cmd = app.add_subcommand("control", "closed-loop PID / DOB simulation");
    add_common(control_cmd, true);

    CLI::App* battery_cmd = app.add_subcommand("battery", "battery capacity sizing");
    double energy_per_step = 10.0, steps = 5000.0, voltage = 24.0, cell_capacity = 4.2;
    battery_cmd->add_option("--config", config, "battery scenario config (JSON)");
    battery_cmd->add_option("--energy-per-step", energy_per_step, "J per walking cycle")
        ->capture_default_str();
    battery_cmd->add_option("--steps", steps, "cycles per charge")->capture_default_str();
    battery_cmd->add_option("--voltage", voltage, "nominal motor voltage [V]")
        ->capture_default_str();
    battery_cmd->add_option("--cell-capacity-ah", cell_capacity, "cell capacity [Ah]")
        ->capture_default_str();
    battery_cmd->add_option("--out", out, "output directory")->capture_default_str();
    battery_cmd->add_option("--seed", seed, "seed recorded in the run report");
    battery_cmd->add_option("--data", data_dir, "fixture directory");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "schema/invariant check of a config or gait CSV");
    validate_cmd->add_option("--config", config, "file to validate")->required();
    validate_cmd->add_option("--data", data_dir, "fixture directory");

    CLI::App* report_cmd = app.add_subcommand("report", "run the whole shipped scenario set");
    report_cmd->add_option("--out", out, "output directory")->capture_default_str();
    report_cmd->add_option("--seed", seed, "seed recorded in the run reports");
    report_cmd->add_option("--data", data_dir, "fixture directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ToolkitHandle tk;
    if (!data_dir.empty()) ak_toolkit_set_data_dir(tk.tk, data_dir.c_str());

    if (simulate->parsed()) return run_kind(tk, "simulate", config, out, seed, grid_step, data_dir);
    if (design_cmd->parsed()) return run_kind(tk, "design", config, out, seed, grid_step, data_dir);
    if (control_cmd->parsed()) return run_kind(tk, "control", config, out, seed, grid_step, data_dir);

    if (sysid_cmd->parsed()) {
        if (config.empty() && input_csv.empty()) {
            std::fprintf(stderr, "error: sysid needs --config or --input\n");
            return 2;
        }
        if (config.empty()) {
            // wrap the io table in a minimal scenario config
            std::error_code ec;
            std::filesystem::create_directories(out, ec);
            const std::string wrapper = out + "/sysid_input.json";
            std::ofstream f(wrapper, std::ios::binary);
            if (!f) {
                std::fprintf(stderr, "error: cannot write %s\n", wrapper.c_str());
                return 2;
            }
            f << "{\n  \"kind\": \"sysid\",\n  \"id\": \"sysid_input\",\n"
                 "  \"mode\": \"io_csv\",\n  \"io_csv\": \""
              << std::filesystem::absolute(input_csv).string() << "\"\n}\n";
            f.close();
            config = wrapper;
        }
        return run_kind(tk, "sysid", config, out, seed, grid_step, data_dir);
    }

    if (battery_cmd->parsed()) {
        if (!config.empty()) return run_kind(tk, "battery", config, out, seed, grid_step, data_dir);
        double ah = 0.0;
        const ak_status status = ak_battery_capacity_ah(energy_per_step, steps, voltage, &ah);
        if (status != AK_OK) {
            std::fprintf(stderr, "error: invalid battery inputs\n");
            return status;
        }
        std::printf("required capacity: %.4f Ah\n", ah);
        std::printf("cell capacity:     %.4f Ah\n", cell_capacity);
        std::printf("sufficient:        %s\n", cell_capacity >= ah ? "yes" : "no");
        return 0;
    }

    if (validate_cmd->parsed()) {
        ReportHandle report;
        const ak_status status = ak_toolkit_validate(tk.tk, config.c_str(), &report.r);
        if (status != AK_OK) {
            std::fprintf(stderr, "error: %s\n", ak_toolkit_last_error(tk.tk));
            return status;
        }
        const size_t n = ak_report_diagnostic_count(report.r);
        if (n == 0) {
            std::printf("ok: no diagnostics\n");
        } else {
            for (size_t i = 0; i < n; ++i)
                std::printf("diagnostic: %s\n", ak_report_diagnostic(report.r, i));
        }
        return 0;
    }

    if (report_cmd->parsed()) {
        ak_run_options options{out.c_str(), seed, 0.0};
        ReportHandle report;
        const ak_status status = ak_toolkit_report_suite(tk.tk, &options, &report.r);
        if (status != AK_OK) {
            std::fprintf(stderr, "error: %s\n", ak_toolkit_last_error(tk.tk));
            return status;
        }
        print_report(report.r);
        return 0;
    }

    return 2;
}
