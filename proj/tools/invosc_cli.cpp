// Scenario runner for the invariant-operator oscillator library.
//
//   invosc run    --config scenario.json --out series.csv
//   invosc verify --config scenario.json [--report report.json]
//   invosc sweep  --config scenario.json --param nu --values 2,3.7 --out table.csv
//
// Exit codes: 0 success, 1 verification failure, 2 config or runtime error.

#include "invosc/errors.hpp"
#include "invosc/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitVerificationFailed = 1;
constexpr int kExitError = 2;

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw invosc::ConfigError("values", "'" + item + "' is not a number");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw invosc::ConfigError("values", "'" + item + "' is not a number");
        }
        values.push_back(v);
    }
    return values;
}

std::ofstream open_output(const std::string& path, const char* field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw invosc::ConfigError(field, "cannot open '" + path + "' for writing");
    }
    return out;
}

void print_summary(const invosc::RunResult& result) {
    const auto& last = result.samples.back();
    std::cout << "samples: " << result.samples.size() << '\n'
              << "final t: " << invosc::format_double(last.state.t) << '\n'
              << "final |beta|^2: " << invosc::format_double(std::norm(last.pair.beta)) << '\n'
              << "max wronskian residual: " << invosc::format_double(result.trajectory.max_wronskian_residual) << '\n'
              << "max wronskian drift: " << invosc::format_double(result.trajectory.max_wronskian_drift) << '\n';
    if (result.trajectory.soft_limit_time) {
        std::cerr << "warning: Wronskian drift crossed " << result.trajectory.options.soft_wronskian_limit
                  << " at t = " << *result.trajectory.soft_limit_time << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant-operator analysis of time-dependent generalized oscillators"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string report_path;
    std::string param;
    std::string values_text;

    auto* run_cmd = app.add_subcommand("run", "Integrate a scenario and write the CSV time series");
    run_cmd->add_option("--config", config_path, "Scenario JSON document")->required();
    run_cmd->add_option("--out", out_path, "CSV output path (defaults to output.csv of the config)");

    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite and the optional Fock-space oracle");
    verify_cmd->add_option("--config", config_path, "Scenario JSON document")->required();
    verify_cmd->add_option("--report", report_path, "JSON report path (defaults to output.report of the config)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario per value of a profile parameter");
    sweep_cmd->add_option("--config", config_path, "Scenario JSON document")->required();
    sweep_cmd->add_option("--param", param, "Profile parameter name, e.g. nu or initial.Z")->required();
    sweep_cmd->add_option("--values", values_text, "Comma-separated values (may be empty)")->required()->expected(0, 1);
    sweep_cmd->add_option("--out", out_path, "CSV output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        auto config = invosc::ScenarioConfig::load(config_path);

        if (*run_cmd) {
            if (!out_path.empty()) {
                config.csv_path = out_path;
                config.validate();
            }
            if (!config.csv_path) {
                throw invosc::ConfigError("out", "no CSV path given (--out or output.csv)");
            }
            const auto result = invosc::run(config);
            auto out = open_output(config.csv_path->string(), "out");
            invosc::write_csv(out, result, config);
            print_summary(result);
            return EXIT_SUCCESS;
        }

        if (*verify_cmd) {
            if (!report_path.empty()) {
                config.report_path = report_path;
                config.validate();
            }
            const auto report = invosc::verify(config);
            for (const auto& e : report.entries) {
                std::cout << (e.pass ? "PASS " : "FAIL ") << e.name << "  max=" << invosc::format_double(e.max_residual)
                          << "  tol=" << invosc::format_double(e.tolerance)
                          << "  at t=" << invosc::format_double(e.worst_time) << '\n';
            }
            std::cout << "overall: " << (report.pass() ? "pass" : "fail") << '\n';
            if (config.report_path) {
                auto out = open_output(config.report_path->string(), "report");
                out << report.to_json();
            }
            return report.pass() ? EXIT_SUCCESS : kExitVerificationFailed;
        }

        if (*sweep_cmd) {
            const auto values = parse_values(values_text);
            const auto rows = invosc::sweep(config, param, values);
            if (out_path.empty()) {
                invosc::write_sweep_csv(std::cout, rows);
            } else {
                auto out = open_output(out_path, "out");
                invosc::write_sweep_csv(out, rows);
            }
            return EXIT_SUCCESS;
        }
    } catch (const invosc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitError;
    } catch (const invosc::DivergenceError& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
