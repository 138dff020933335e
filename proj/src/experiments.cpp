#include "bpve/experiments.hpp"

#include "bpve/evolve.hpp"
#include "bpve/limit_laws.hpp"
#include "bpve/montecarlo.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <system_error>

namespace bpve {

namespace {

using nlohmann::json;

constexpr const char* kConfigSchema = "bpve-experiment-1";
constexpr const char* kReportSchema = "bpve-report-1";

[[noreturn]] void bad_config(const std::string& message) {
    throw std::invalid_argument("config: " + message);
}

void check_keys(const json& obj, const char* where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (allowed.find(it.key()) == allowed.end())
            bad_config("unknown key '" + it.key() + "' in " + where);
}

const json& require(const json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end())
        bad_config(std::string("missing key '") + key + "' in " + where);
    return *it;
}

double as_double(const json& v, const char* what) {
    if (!v.is_number())
        bad_config(std::string(what) + " must be a number");
    return v.get<double>();
}

std::int64_t as_int(const json& v, const char* what) {
    if (!v.is_number_integer())
        bad_config(std::string(what) + " must be an integer");
    return v.get<std::int64_t>();
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void parse_family(const json& doc, ExperimentConfig& c) {
    const json& fam = require(doc, "family", "config");
    if (!fam.is_object())
        bad_config("family must be an object");
    check_keys(fam, "family", {"a", "n0", "nu"});
    c.a = as_double(require(fam, "a", "family"), "family.a");
    c.n0 = as_int(require(fam, "n0", "family"), "family.n0");
    c.nu = as_double(require(fam, "nu", "family"), "family.nu");
}

void parse_grid(const json& doc, ExperimentConfig& c) {
    const json& grid = require(doc, "n_grid", "config");
    if (!grid.is_array() || grid.empty())
        bad_config("n_grid must be a non-empty array");
    for (const auto& v : grid) {
        std::int64_t n = as_int(v, "n_grid entry");
        if (n < 1)
            bad_config("n_grid entries must be >= 1");
        if (!c.n_grid.empty() && n <= c.n_grid.back())
            bad_config("n_grid must be strictly increasing");
        c.n_grid.push_back(n);
    }
}

void parse_cap(const json& doc, ExperimentConfig& c) {
    const json& cap = require(doc, "cap", "config");
    std::int64_t m = as_int(cap, "cap");
    if (m < 8)
        bad_config("cap must be >= 8");
    c.cap = static_cast<std::size_t>(m);
}

void parse_immigration(const json& doc, ExperimentConfig& c) {
    const json& imm = require(doc, "immigration", "config");
    if (!imm.is_object())
        bad_config("immigration must be an object");
    check_keys(imm, "immigration", {"variant", "q", "lambda1"});
    const json& variant = require(imm, "variant", "immigration");
    if (!variant.is_string())
        bad_config("immigration.variant must be a string");
    c.immigration_variant = variant.get<std::string>();
    if (c.immigration_variant == "finite-support") {
        if (imm.contains("lambda1"))
            bad_config("immigration.lambda1 does not apply to finite-support");
        const json& q = require(imm, "q", "immigration");
        if (!q.is_array() || q.empty())
            bad_config("immigration.q must be a non-empty array");
        double total = 0.0;
        for (const auto& v : q) {
            double w = as_double(v, "immigration.q entry");
            if (w < 0.0)
                bad_config("immigration.q entries must be >= 0");
            total += w;
            c.q.push_back(w);
        }
        if (total <= 0.0)
            bad_config("immigration.q must have positive total weight");
    } else if (c.immigration_variant == "poisson") {
        if (imm.contains("q"))
            bad_config("immigration.q does not apply to poisson");
        c.lambda1 = as_double(require(imm, "lambda1", "immigration"),
                              "immigration.lambda1");
        if (c.lambda1 <= 0.0)
            bad_config("immigration.lambda1 must be > 0");
    } else {
        bad_config("immigration.variant must be finite-support or poisson");
    }
}

void parse_tolerances(const json& doc, ExperimentConfig& c,
                      const std::set<std::string>& allowed) {
    auto it = doc.find("tolerances");
    if (it == doc.end())
        return;
    if (!it->is_object())
        bad_config("tolerances must be an object");
    check_keys(*it, "tolerances", allowed);
    for (auto kv = it->begin(); kv != it->end(); ++kv) {
        const std::string& key = kv.key();
        if (key == "strict_decrease") {
            if (!kv.value().is_boolean())
                bad_config("tolerances.strict_decrease must be a boolean");
            c.strict_decrease = kv.value().get<bool>();
            continue;
        }
        double v = as_double(kv.value(), ("tolerances." + key).c_str());
        if (v <= 0.0)
            bad_config("tolerances." + key + " must be > 0");
        if (key == "terminal_tv")
            c.terminal_tv = v;
        else if (key == "conditional_mean")
            c.conditional_mean_tol = v;
        else if (key == "empirical_tv")
            c.empirical_tv = v;
        else if (key == "survival_sigmas")
            c.survival_sigmas = v;
        else if (key == "negbin_tv")
            c.negbin_tv = v;
        else if (key == "lost_tol")
            c.lost_tol = v;
    }
}

void parse_seed(const json& doc, ExperimentConfig& c) {
    auto it = doc.find("seed");
    if (it == doc.end())
        return;
    if (!it->is_number_integer() || (it->is_number_integer() &&
                                     !it->is_number_unsigned() &&
                                     it->get<std::int64_t>() < 0))
        bad_config("seed must be a nonnegative integer");
    c.seed = it->get<std::uint64_t>();
}

json config_to_json_obj(const ExperimentConfig& c) {
    json j;
    j["schema"] = kConfigSchema;
    j["experiment"] = c.experiment;
    if (!c.out_name.empty())
        j["out"] = c.out_name;
    if (c.experiment == "identities") {
        j["max_k"] = c.max_k;
        j["max_L"] = c.max_L;
        j["n_rationals"] = c.n_rationals;
        j["seed"] = c.seed;
        return j;
    }
    j["family"] = {{"a", c.a}, {"n0", c.n0}, {"nu", c.nu}};
    j["n_grid"] = c.n_grid;
    j["cap"] = c.cap;
    if (c.experiment == "yaglom") {
        j["tolerances"] = {{"terminal_tv", c.terminal_tv},
                           {"strict_decrease", c.strict_decrease},
                           {"conditional_mean", c.conditional_mean_tol},
                           {"lost_tol", c.lost_tol}};
    } else if (c.experiment == "immigration") {
        if (c.immigration_variant == "finite-support")
            j["immigration"] = {{"variant", c.immigration_variant},
                                {"q", c.q}};
        else
            j["immigration"] = {{"variant", c.immigration_variant},
                                {"lambda1", c.lambda1}};
        j["tolerances"] = {{"terminal_tv", c.terminal_tv},
                           {"strict_decrease", c.strict_decrease},
                           {"negbin_tv", c.negbin_tv},
                           {"lost_tol", c.lost_tol}};
    } else if (c.experiment == "montecarlo-xcheck") {
        j["seed"] = c.seed;
        j["replicates"] = c.replicates;
        j["threads"] = c.threads;
        j["tolerances"] = {{"empirical_tv", c.empirical_tv},
                           {"survival_sigmas", c.survival_sigmas},
                           {"lost_tol", c.lost_tol}};
    }
    return j;
}

EnvironmentSpec environment_from(const ExperimentConfig& c) {
    EnvironmentSpec env = EnvironmentSpec::quadratic(c.a, c.n0, c.nu);
    if (c.experiment != "immigration")
        return env;
    if (c.immigration_variant == "finite-support")
        return env.with_immigration(FiniteSupportImmigration{c.q});
    return env.with_immigration(PoissonImmigration{c.lambda1});
}

void judge_trend(ExperimentReport& report, const std::vector<double>& tvs,
                 const ExperimentConfig& c) {
    if (c.strict_decrease)
        for (std::size_t i = 1; i < tvs.size(); ++i)
            if (!(tvs[i] < tvs[i - 1]))
                report.violations.push_back(
                    "tv_to_limit not strictly decreasing between n=" +
                    std::to_string(c.n_grid[i - 1]) + " and n=" +
                    std::to_string(c.n_grid[i]) + " (" +
                    format_double(tvs[i - 1]) + " -> " +
                    format_double(tvs[i]) + ")");
    if (!(tvs.back() < c.terminal_tv))
        report.violations.push_back(
            "terminal tv_to_limit " + format_double(tvs.back()) +
            " is not below " + format_double(c.terminal_tv));
}

void run_yaglom(ExperimentReport& report) {
    const ExperimentConfig& c = report.config;
    EnvironmentSpec env = environment_from(c);
    const Pmf limit = geometric_limit(c.nu, c.cap);
    report.columns = {"n", "tv_to_limit", "lost_mass", "survival",
                      "conditional_mean"};
    Evolution ev(env, Evolution::Kind::branching, c.cap, c.lost_tol);
    std::vector<double> tvs;
    double terminal_mean = 0.0;
    for (std::int64_t n : c.n_grid) {
        while (ev.generation() < n)
            ev.step();
        const EvolutionResult snap = ev.snapshot();
        const double tv = tv_distance(conditional_law(snap), limit);
        terminal_mean = conditional_mean(snap);
        report.rows.push_back({static_cast<double>(n), tv,
                               snap.lost_mass_bound, snap.survival,
                               terminal_mean});
        tvs.push_back(tv);
    }
    judge_trend(report, tvs, c);
    const double target = 1.0 + c.nu / 2.0;
    if (std::fabs(terminal_mean - target) > c.conditional_mean_tol)
        report.violations.push_back(
            "terminal conditional mean " + format_double(terminal_mean) +
            " deviates from " + format_double(target) + " by more than " +
            format_double(c.conditional_mean_tol));
}

void run_immigration(ExperimentReport& report) {
    const ExperimentConfig& c = report.config;
    EnvironmentSpec env = environment_from(c);
    QSequence qlim;
    if (c.immigration_variant == "finite-support")
        qlim.values = c.q;
    else
        qlim.values = {c.lambda1};
    const CompoundPoissonLaw cp =
        A_coefficients(qlim, c.nu, cp_truncation(qlim, c.nu));
    const Pmf limit = cp_pmf(cp, c.cap);
    report.columns = {"n", "tv_to_limit", "lost_mass", "total_mass", "mean"};
    Evolution ev(env, Evolution::Kind::with_immigration, c.cap, c.lost_tol);
    std::vector<double> tvs;
    for (std::int64_t n : c.n_grid) {
        while (ev.generation() < n)
            ev.step();
        const EvolutionResult snap = ev.snapshot();
        const double tv = tv_distance(snap.pmf, limit);
        report.rows.push_back({static_cast<double>(n), tv,
                               snap.lost_mass_bound, snap.pmf.mass(),
                               snap.pmf.mean()});
        tvs.push_back(tv);
    }
    judge_trend(report, tvs, c);

    bool single = !qlim.values.empty() && qlim.values[0] > 0.0;
    for (std::size_t j = 1; j < qlim.values.size(); ++j)
        if (qlim.values[j] != 0.0)
            single = false;
    if (single) {
        report.negbin_cross_tv =
            tv_distance(limit, negbin_limit(qlim.values[0], c.nu, c.cap));
        if (!(report.negbin_cross_tv <= c.negbin_tv))
            report.violations.push_back(
                "negative-binomial cross-check tv " +
                format_double(report.negbin_cross_tv) + " exceeds " +
                format_double(c.negbin_tv));
    }
}

void run_identities(ExperimentReport& report) {
    const ExperimentConfig& c = report.config;
    report.columns = {"suite", "cases", "failures", "max_abs_error"};
    report.suites =
        run_identity_suites(c.max_k, c.max_L, c.n_rationals, c.seed);
    for (const auto& suite : report.suites)
        if (suite.failures != 0)
            report.violations.push_back(
                "suite " + suite.name + " has " +
                std::to_string(suite.failures) + " failing cases of " +
                std::to_string(suite.cases));
}

void run_montecarlo(ExperimentReport& report) {
    const ExperimentConfig& c = report.config;
    EnvironmentSpec env = environment_from(c);
    report.columns = {"n",                  "empirical_tv",
                      "exact_survival",     "empirical_survival",
                      "survival_se",        "replicates"};
    for (std::int64_t n : c.n_grid) {
        const EvolutionResult exact = evolve_x(env, n, c.cap, c.lost_tol);
        SimConfig sim;
        sim.seed = c.seed;
        sim.replicates = c.replicates;
        sim.horizon = n;
        const EmpiricalLaw emp = simulate_x(env, sim, c.threads);
        const double tv = empirical_tv(emp, exact.pmf);
        const double exact_survival = exact.survival;
        const double empirical_survival =
            static_cast<double>(emp.survivors) /
            static_cast<double>(emp.total);
        const double se =
            std::sqrt(exact_survival * (1.0 - exact_survival) /
                      static_cast<double>(c.replicates));
        report.rows.push_back({static_cast<double>(n), tv, exact_survival,
                               empirical_survival, se,
                               static_cast<double>(c.replicates)});
        if (!(tv <= c.empirical_tv))
            report.violations.push_back(
                "empirical tv " + format_double(tv) + " at n=" +
                std::to_string(n) + " exceeds " +
                format_double(c.empirical_tv));
        if (!(std::fabs(empirical_survival - exact_survival) <=
              c.survival_sigmas * se + exact.lost_mass_bound))
            report.violations.push_back(
                "empirical survival " + format_double(empirical_survival) +
                " at n=" + std::to_string(n) + " outside " +
                format_double(c.survival_sigmas) + " standard errors of " +
                format_double(exact_survival));
    }
}

bool integral_column(const std::string& name) {
    return name == "n" || name == "cases" || name == "failures" ||
           name == "replicates";
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad_config(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        bad_config("top level must be an object");

    const json& schema = require(doc, "schema", "config");
    if (!schema.is_string() || schema.get<std::string>() != kConfigSchema)
        bad_config(std::string("schema must be \"") + kConfigSchema + "\"");

    ExperimentConfig c;
    const json& experiment = require(doc, "experiment", "config");
    if (!experiment.is_string())
        bad_config("experiment must be a string");
    c.experiment = experiment.get<std::string>();

    if (auto it = doc.find("out"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>().empty())
            bad_config("out must be a non-empty string");
        c.out_name = it->get<std::string>();
    }

    if (c.experiment == "yaglom") {
        check_keys(doc, "config",
                   {"schema", "experiment", "out", "family", "n_grid", "cap",
                    "tolerances"});
        parse_family(doc, c);
        parse_grid(doc, c);
        parse_cap(doc, c);
        parse_tolerances(doc, c,
                         {"terminal_tv", "strict_decrease",
                          "conditional_mean", "lost_tol"});
    } else if (c.experiment == "immigration") {
        check_keys(doc, "config",
                   {"schema", "experiment", "out", "family", "immigration",
                    "n_grid", "cap", "tolerances"});
        parse_family(doc, c);
        parse_immigration(doc, c);
        parse_grid(doc, c);
        parse_cap(doc, c);
        parse_tolerances(doc, c,
                         {"terminal_tv", "strict_decrease", "negbin_tv",
                          "lost_tol"});
    } else if (c.experiment == "identities") {
        check_keys(doc, "config",
                   {"schema", "experiment", "out", "max_k", "max_L",
                    "n_rationals", "seed"});
        if (auto it = doc.find("max_k"); it != doc.end())
            c.max_k = static_cast<int>(as_int(*it, "max_k"));
        if (auto it = doc.find("max_L"); it != doc.end())
            c.max_L = static_cast<int>(as_int(*it, "max_L"));
        if (auto it = doc.find("n_rationals"); it != doc.end())
            c.n_rationals = static_cast<int>(as_int(*it, "n_rationals"));
        if (c.max_k < 1 || c.max_k > 20 || c.max_L < 1 || c.max_L > 20 ||
            c.n_rationals < 1)
            bad_config("identities bounds out of range");
        parse_seed(doc, c);
    } else if (c.experiment == "montecarlo-xcheck") {
        check_keys(doc, "config",
                   {"schema", "experiment", "out", "family", "n_grid", "cap",
                    "seed", "replicates", "threads", "tolerances"});
        parse_family(doc, c);
        parse_grid(doc, c);
        parse_cap(doc, c);
        parse_seed(doc, c);
        if (auto it = doc.find("replicates"); it != doc.end()) {
            c.replicates = as_int(*it, "replicates");
            if (c.replicates < 1)
                bad_config("replicates must be >= 1");
        }
        if (auto it = doc.find("threads"); it != doc.end()) {
            c.threads = static_cast<int>(as_int(*it, "threads"));
            if (c.threads < 1)
                bad_config("threads must be >= 1");
        }
        parse_tolerances(doc, c, {"empirical_tv", "survival_sigmas",
                                  "lost_tol"});
    } else {
        bad_config("experiment must be one of yaglom, immigration, "
                   "identities, montecarlo-xcheck");
    }
    return c;
}

std::string experiment_config_json(const ExperimentConfig& config) {
    return config_to_json_obj(config).dump(2) + "\n";
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    ExperimentReport report;
    report.config = config;
    if (config.experiment == "yaglom")
        run_yaglom(report);
    else if (config.experiment == "immigration")
        run_immigration(report);
    else if (config.experiment == "identities")
        run_identities(report);
    else if (config.experiment == "montecarlo-xcheck")
        run_montecarlo(report);
    else
        throw std::invalid_argument("run_experiment: unknown experiment '" +
                                    config.experiment + "'");
    report.pass = report.violations.empty();
    return report;
}

ReportPaths write_report_files(const ExperimentReport& report,
                               const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string base = report.config.out_name.empty()
                                 ? report.config.experiment
                                 : report.config.out_name;
    ReportPaths paths;
    paths.csv = (fs::path(out_dir) / (base + ".csv")).string();
    paths.json = (fs::path(out_dir) / (base + ".json")).string();

    {
        std::ofstream csv(paths.csv, std::ios::binary);
        if (!csv)
            throw std::runtime_error("cannot write " + paths.csv);
        for (std::size_t i = 0; i < report.columns.size(); ++i)
            csv << (i ? "," : "") << report.columns[i];
        csv << "\n";
        if (report.config.experiment == "identities") {
            for (const auto& suite : report.suites)
                csv << suite.name << "," << suite.cases << ","
                    << suite.failures << ","
                    << format_double(suite.max_abs_error) << "\n";
        } else {
            for (const auto& row : report.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i)
                        csv << ",";
                    if (integral_column(report.columns[i]))
                        csv << static_cast<std::int64_t>(row[i]);
                    else
                        csv << format_double(row[i]);
                }
                csv << "\n";
            }
        }
    }

    json j;
    j["schema"] = kReportSchema;
    j["experiment"] = report.config.experiment;
    j["config"] = config_to_json_obj(report.config);
    j["pass"] = report.pass;
    j["violations"] = report.violations;
    j["columns"] = report.columns;
    json rows = json::array();
    if (report.config.experiment == "identities") {
        for (const auto& suite : report.suites)
            rows.push_back(json::array({suite.name, suite.cases,
                                        suite.failures,
                                        suite.max_abs_error}));
    } else {
        for (const auto& row : report.rows) {
            json r = json::array();
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (integral_column(report.columns[i]))
                    r.push_back(static_cast<std::int64_t>(row[i]));
                else
                    r.push_back(row[i]);
            }
            rows.push_back(r);
        }
    }
    j["rows"] = rows;
    if (report.negbin_cross_tv >= 0.0)
        j["negbin_cross_tv"] = report.negbin_cross_tv;
    {
        std::ofstream out(paths.json, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + paths.json);
        out << j.dump(2) << "\n";
    }
    return paths;
}

namespace {

const std::vector<std::pair<std::string, std::string>>& preset_table() {
    static const std::vector<std::pair<std::string, std::string>> presets = {
        {"yaglom-nu2", R"({
  "schema": "bpve-experiment-1",
  "experiment": "yaglom",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "n_grid": [10, 100, 1000, 5000],
  "cap": 512,
  "tolerances": {"terminal_tv": 0.05, "strict_decrease": true, "conditional_mean": 0.1}
})"},
        {"immigration-q1", R"({
  "schema": "bpve-experiment-1",
  "experiment": "immigration",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "immigration": {"variant": "finite-support", "q": [1.0]},
  "n_grid": [10, 100, 1000, 5000],
  "cap": 512,
  "tolerances": {"terminal_tv": 0.05, "strict_decrease": true, "negbin_tv": 1e-10}
})"},
        {"immigration-q3", R"({
  "schema": "bpve-experiment-1",
  "experiment": "immigration",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "immigration": {"variant": "finite-support", "q": [1.0, 0.5, 0.25]},
  "n_grid": [10, 100, 1000, 5000],
  "cap": 512,
  "tolerances": {"terminal_tv": 0.05, "strict_decrease": true}
})"},
        {"identities", R"({
  "schema": "bpve-experiment-1",
  "experiment": "identities",
  "max_k": 12,
  "max_L": 10,
  "n_rationals": 50,
  "seed": 20260825
})"},
        {"montecarlo-x100", R"({
  "schema": "bpve-experiment-1",
  "experiment": "montecarlo-xcheck",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "n_grid": [100],
  "cap": 512,
  "seed": 20260825,
  "replicates": 100000,
  "threads": 1,
  "tolerances": {"empirical_tv": 0.02, "survival_sigmas": 4.0}
})"},
    };
    return presets;
}

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : preset_table())
        names.push_back(name);
    return names;
}

std::string preset_json(const std::string& name) {
    for (const auto& [key, text] : preset_table())
        if (key == name)
            return text;
    throw std::invalid_argument("unknown preset '" + name + "'");
}

} // namespace bpve
