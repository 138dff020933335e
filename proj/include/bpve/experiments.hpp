#pragma once

#include "bpve/identities.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bpve {

/**
 * One batch experiment. Configs arrive as strict JSON ("schema":
 * "bpve-experiment-1", unknown keys rejected); the struct carries every
 * field with its default so reports can echo the full effective config.
 *
 * experiment:
 *   yaglom            exact conditional law of X_n vs its geometric limit
 *   immigration       exact law of Y_n vs the compound-Poisson limit
 *   identities        exact combinatorial identity suites
 *   montecarlo-xcheck simulated X_n vs the exact engine
 */
struct ExperimentConfig {
    std::string experiment;

    // family (quadratic offspring, harmonic decay a/(n+n0))
    double a = 1.0;
    std::int64_t n0 = 2;
    double nu = 2.0;

    // immigration (immigration experiment only)
    std::string immigration_variant; // "finite-support" | "poisson"
    std::vector<double> q;           // finite-support weights q_1..q_J
    double lambda1 = 0.0;            // poisson rate factor

    std::vector<std::int64_t> n_grid;
    std::size_t cap = 512;
    std::uint64_t seed = 20260825;

    // montecarlo-xcheck
    std::int64_t replicates = 100000;
    int threads = 1;

    // identities corpus bounds
    int max_k = 12;
    int max_L = 10;
    int n_rationals = 50;

    // tolerances
    double terminal_tv = 0.05;       // TV at the last grid point must be below
    bool strict_decrease = true;     // TV strictly decreasing along the grid
    double conditional_mean_tol = 0.1; // |cond mean - (1 + nu/2)| at terminal n
    double empirical_tv = 0.02;      // simulated-vs-exact TV bound
    double survival_sigmas = 4.0;    // binomial error-bar width
    double negbin_tv = 1e-10;        // limit cross-check when q = (q1)
    double lost_tol = 0.01;          // evolution truncation budget

    std::string out_name; // report basename; defaults to the experiment name
};

/// Parse and validate a JSON config document. Unknown keys anywhere are an
/// error, as are a missing/mismatched "schema", a non-increasing n_grid, or
/// cap < 8. Throws std::invalid_argument with a pointed message.
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Canonical JSON echo of a config (all effective fields, sorted keys).
std::string experiment_config_json(const ExperimentConfig& config);

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;   // numeric experiments
    std::vector<IdentitySuiteResult> suites; // identities experiment
    double negbin_cross_tv = -1.0;           // < 0 when not applicable
    bool pass = false;
    std::vector<std::string> violations;
};

/// Run the experiment and judge it against the config tolerances. The
/// verdict is computed solely from the recorded rows.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct ReportPaths {
    std::string csv;
    std::string json;
};

/// Write <name>.csv (header + rows) and <name>.json (schema "bpve-report-1",
/// config echo, verdict, rows) under out_dir, creating it if needed. Both
/// files are byte-deterministic for a given config.
ReportPaths write_report_files(const ExperimentReport& report,
                               const std::string& out_dir);

/// Built-in configs, one per acceptance scenario.
std::vector<std::string> preset_names();

/// JSON text of a named preset; throws std::invalid_argument on unknown name.
std::string preset_json(const std::string& name);

} // namespace bpve
