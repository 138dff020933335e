#include "bpve/experiments.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string apply_overrides(const std::string& text,
                            const std::vector<std::string>& overrides) {
    nlohmann::json doc = nlohmann::json::parse(text);
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument(
                "override must look like key=value, got: " + item);
        const std::string path = item.substr(0, eq);
        const std::string raw = item.substr(eq + 1);
        nlohmann::json value;
        try {
            value = nlohmann::json::parse(raw);
        } catch (const nlohmann::json::parse_error&) {
            value = raw; // bare words become strings
        }
        nlohmann::json* node = &doc;
        std::size_t pos = 0;
        while (true) {
            const auto dot = path.find('.', pos);
            const std::string key =
                path.substr(pos, dot == std::string::npos ? std::string::npos
                                                          : dot - pos);
            if (key.empty())
                throw std::invalid_argument("override has an empty key part: " +
                                            item);
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            node = &(*node)[key];
            pos = dot + 1;
        }
    }
    return doc.dump();
}

void print_report(const bpve::ExperimentReport& report) {
    std::cout << "experiment: " << report.config.experiment << "\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        std::cout << (i ? "  " : "") << report.columns[i];
    std::cout << "\n";
    std::cout << std::setprecision(10);
    if (report.config.experiment == "identities") {
        for (const auto& suite : report.suites)
            std::cout << suite.name << "  " << suite.cases << "  "
                      << suite.failures << "  " << suite.max_abs_error
                      << "\n";
    } else {
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? "  " : "") << row[i];
            std::cout << "\n";
        }
    }
    if (report.negbin_cross_tv >= 0.0)
        std::cout << "negbin cross-check tv: " << report.negbin_cross_tv
                  << "\n";
    for (const auto& v : report.violations)
        std::cout << "violation: " << v << "\n";
    std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nearly critical branching processes in varying "
                 "environment: exact evolution, limit laws, and "
                 "statistical cross-checks"};
    app.require_subcommand(1);

    auto* run_cmd =
        app.add_subcommand("run", "Run an experiment from a JSON config");
    std::string config_path;
    std::string preset;
    std::string out_dir = "reports";
    std::vector<std::string> overrides;
    run_cmd->add_option("config", config_path, "Path to a config JSON file");
    run_cmd->add_option("--preset", preset,
                        "Use a built-in config (see list-presets)");
    run_cmd->add_option("--out", out_dir, "Directory for report files")
        ->capture_default_str();
    run_cmd->add_option("--override", overrides,
                        "Override a config field, e.g. family.nu=1.0 or "
                        "tolerances.terminal_tv=0.1 (repeatable)");

    auto* list_cmd =
        app.add_subcommand("list-presets", "Print the built-in configs");

    auto* ident_cmd = app.add_subcommand(
        "identities", "Run the exact identity suites and print the verdict");
    int max_k = 12;
    ident_cmd->add_option("--max-k", max_k, "Largest k per suite")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const auto& name : bpve::preset_names())
                std::cout << "# " << name << "\n"
                          << bpve::preset_json(name) << "\n\n";
            return 0;
        }

        if (ident_cmd->parsed()) {
            bpve::ExperimentConfig config =
                bpve::parse_experiment_config(bpve::preset_json("identities"));
            if (max_k < 1 || max_k > 20)
                throw std::invalid_argument("--max-k must be in [1, 20]");
            config.max_k = max_k;
            const auto report = bpve::run_experiment(config);
            print_report(report);
            return report.pass ? 0 : 1;
        }

        std::string text;
        if (!preset.empty()) {
            if (!config_path.empty())
                throw std::invalid_argument(
                    "run: give either a config path or --preset, not both");
            text = bpve::preset_json(preset);
        } else if (!config_path.empty()) {
            text = read_file(config_path);
        } else {
            throw std::invalid_argument(
                "run: provide a config path or --preset");
        }
        if (!overrides.empty())
            text = apply_overrides(text, overrides);

        const bpve::ExperimentConfig config =
            bpve::parse_experiment_config(text);
        const auto start = std::chrono::steady_clock::now();
        const auto report = bpve::run_experiment(config);
        const auto elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        const auto paths = bpve::write_report_files(report, out_dir);
        print_report(report);
        std::cout << "wall time: " << std::setprecision(3) << elapsed
                  << " s\n";
        std::cout << "wrote " << paths.csv << " and " << paths.json << "\n";
        return report.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
