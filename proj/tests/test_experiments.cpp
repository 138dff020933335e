#include "doctest.h"

#include "bpve/experiments.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace bpve;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const char* leaf) {
    fs::path dir = fs::temp_directory_path() / leaf;
    fs::remove_all(dir);
    return dir;
}

const char* kYaglomSmall = R"({
  "schema": "bpve-experiment-1",
  "experiment": "yaglom",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "n_grid": [5, 25],
  "cap": 64
})";

const char* kImmigrationQ1Small = R"({
  "schema": "bpve-experiment-1",
  "experiment": "immigration",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "immigration": {"variant": "finite-support", "q": [1.0]},
  "n_grid": [5, 25],
  "cap": 64
})";

const char* kImmigrationQ3Small = R"({
  "schema": "bpve-experiment-1",
  "experiment": "immigration",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "immigration": {"variant": "finite-support", "q": [1.0, 0.5, 0.25]},
  "n_grid": [5, 25],
  "cap": 64
})";

const char* kIdentitiesSmall = R"({
  "schema": "bpve-experiment-1",
  "experiment": "identities",
  "max_k": 6,
  "max_L": 5,
  "n_rationals": 10,
  "seed": 7
})";

const char* kMontecarloSmall = R"({
  "schema": "bpve-experiment-1",
  "experiment": "montecarlo-xcheck",
  "family": {"a": 1.0, "n0": 2, "nu": 2.0},
  "n_grid": [30],
  "cap": 64,
  "seed": 20260825,
  "replicates": 20000,
  "threads": 2
})";

} // namespace

TEST_CASE("presets parse to the expected effective configs") {
    const std::vector<std::string> names = preset_names();
    REQUIRE(names.size() == 5);
    CHECK(names[0] == "yaglom-nu2");
    CHECK(names[1] == "immigration-q1");
    CHECK(names[2] == "immigration-q3");
    CHECK(names[3] == "identities");
    CHECK(names[4] == "montecarlo-x100");
    CHECK_THROWS_AS(preset_json("nope"), std::invalid_argument);

    SUBCASE("yaglom-nu2") {
        ExperimentConfig c = parse_experiment_config(preset_json("yaglom-nu2"));
        CHECK(c.experiment == "yaglom");
        CHECK(c.a == 1.0);
        CHECK(c.n0 == 2);
        CHECK(c.nu == 2.0);
        CHECK(c.n_grid == std::vector<std::int64_t>{10, 100, 1000, 5000});
        CHECK(c.cap == 512);
        CHECK(c.terminal_tv == 0.05);
        CHECK(c.strict_decrease);
        CHECK(c.conditional_mean_tol == 0.1);
        CHECK(c.lost_tol == 0.01); // default survives a partial tolerances block
        CHECK(c.out_name.empty());
    }
    SUBCASE("immigration-q1") {
        ExperimentConfig c =
            parse_experiment_config(preset_json("immigration-q1"));
        CHECK(c.experiment == "immigration");
        CHECK(c.immigration_variant == "finite-support");
        CHECK(c.q == std::vector<double>{1.0});
        CHECK(c.negbin_tv == 1e-10);
        CHECK(c.terminal_tv == 0.05);
    }
    SUBCASE("immigration-q3") {
        ExperimentConfig c =
            parse_experiment_config(preset_json("immigration-q3"));
        CHECK(c.q == std::vector<double>{1.0, 0.5, 0.25});
    }
    SUBCASE("identities") {
        ExperimentConfig c = parse_experiment_config(preset_json("identities"));
        CHECK(c.max_k == 12);
        CHECK(c.max_L == 10);
        CHECK(c.n_rationals == 50);
        CHECK(c.seed == 20260825u);
    }
    SUBCASE("montecarlo-x100") {
        ExperimentConfig c =
            parse_experiment_config(preset_json("montecarlo-x100"));
        CHECK(c.experiment == "montecarlo-xcheck");
        CHECK(c.n_grid == std::vector<std::int64_t>{100});
        CHECK(c.cap == 512);
        CHECK(c.seed == 20260825u);
        CHECK(c.replicates == 100000);
        CHECK(c.threads == 1);
        CHECK(c.empirical_tv == 0.02);
        CHECK(c.survival_sigmas == 4.0);
    }
}

TEST_CASE("config echo is canonical: re-parsing the echo reproduces it") {
    for (const std::string& name : preset_names()) {
        CAPTURE(name);
        const std::string echo1 =
            experiment_config_json(parse_experiment_config(preset_json(name)));
        const std::string echo2 =
            experiment_config_json(parse_experiment_config(echo1));
        CHECK(echo1 == echo2);
        REQUIRE(!echo1.empty());
        CHECK(echo1.back() == '\n');
    }
    // defaults are materialized in the echo even when the input omits them
    const std::string echo =
        experiment_config_json(parse_experiment_config(kYaglomSmall));
    CHECK(echo.find("\"lost_tol\": 0.01") != std::string::npos);
    CHECK(echo.find("\"terminal_tv\": 0.05") != std::string::npos);
    CHECK(echo.find("\"out\"") == std::string::npos);

    ExperimentConfig labeled = parse_experiment_config(R"({
      "schema": "bpve-experiment-1",
      "experiment": "identities",
      "out": "mylabel"
    })");
    CHECK(labeled.out_name == "mylabel");
    CHECK(experiment_config_json(labeled).find("\"out\": \"mylabel\"") !=
          std::string::npos);
}

TEST_CASE("config validation rejects malformed documents") {
    auto parse = [](const std::string& text) {
        return parse_experiment_config(text);
    };

    CHECK_THROWS_AS(parse("{ nope"), std::invalid_argument);
    CHECK_THROWS_AS(parse("[1,2,3]"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"experiment":"yaglom"})"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse(R"({"schema":"bpve-experiment-2","experiment":"yaglom"})"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"schema":"bpve-experiment-1","experiment":3})"),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        parse(R"({"schema":"bpve-experiment-1","experiment":"frobnicate"})"),
        "config: experiment must be one of yaglom, immigration, identities, "
        "montecarlo-xcheck",
        std::invalid_argument);

    SUBCASE("yaglom structure") {
        auto with = [](const std::string& patch) {
            return std::string(R"({"schema":"bpve-experiment-1",)") +
                   R"("experiment":"yaglom",)" + patch + "}";
        };
        // missing required blocks
        CHECK_THROWS_WITH_AS((void)parse(with(R"("n_grid":[5],"cap":64)")),
                             "config: missing key 'family' in config",
                             std::invalid_argument);
        const std::string fam = R"("family":{"a":1.0,"n0":2,"nu":2.0},)";
        CHECK_THROWS_AS(parse(with(fam + R"("cap":64)")),
                        std::invalid_argument); // no n_grid
        CHECK_THROWS_AS(parse(with(fam + R"("n_grid":[5])")),
                        std::invalid_argument); // no cap
        // unknown / mistyped keys
        CHECK_THROWS_WITH_AS(
            (void)parse(with(fam + R"("n_grid":[5],"cap":64,"seed":1)")),
            "config: unknown key 'seed' in config", std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"("family":3,"n_grid":[5],"cap":64)")),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"("family":{"a":1.0,"n0":2,"nu":2.0,"x":1},"n_grid":[5],"cap":64)")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(R"("family":{"a":1.0,"n0":2},"n_grid":[5],"cap":64)")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"("family":{"a":"1","n0":2,"nu":2.0},"n_grid":[5],"cap":64)")),
            std::invalid_argument);
        // grid shape
        CHECK_THROWS_AS(parse(with(fam + R"("n_grid":[],"cap":64)")),
                        std::invalid_argument);
        CHECK_THROWS_WITH_AS(
            (void)parse(with(fam + R"("n_grid":[5,5],"cap":64)")),
            "config: n_grid must be strictly increasing",
            std::invalid_argument);
        CHECK_THROWS_AS(parse(with(fam + R"("n_grid":[0],"cap":64)")),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse(with(fam + R"("n_grid":[1.5],"cap":64)")),
                        std::invalid_argument);
        // cap bounds
        CHECK_THROWS_WITH_AS((void)parse(with(fam + R"("n_grid":[5],"cap":7)")),
                             "config: cap must be >= 8", std::invalid_argument);
        CHECK_THROWS_AS(parse(with(fam + R"("n_grid":[5],"cap":12.5)")),
                        std::invalid_argument);
        // tolerances block
        const std::string grid = fam + R"("n_grid":[5],"cap":64,)";
        CHECK_THROWS_AS(parse(with(grid + R"("tolerances":3)")),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse(with(grid + R"("tolerances":{"negbin_tv":1e-10})")),
                        std::invalid_argument); // not a yaglom tolerance
        CHECK_THROWS_AS(
            parse(with(grid + R"("tolerances":{"strict_decrease":1})")),
            std::invalid_argument);
        CHECK_THROWS_AS(parse(with(grid + R"("tolerances":{"terminal_tv":0.0})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse(with(grid + R"("tolerances":{"terminal_tv":"x"})")),
                        std::invalid_argument);
        // out label
        CHECK_THROWS_AS(parse(with(grid + R"("out":"")")),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse(with(grid + R"("out":5)")),
                        std::invalid_argument);
        // a disabled trend check round-trips
        ExperimentConfig relaxed =
            parse(with(grid + R"("tolerances":{"strict_decrease":false})"));
        CHECK(!relaxed.strict_decrease);
    }

    SUBCASE("immigration structure") {
        auto with = [](const std::string& imm) {
            return std::string(R"({"schema":"bpve-experiment-1",)") +
                   R"("experiment":"immigration",)" +
                   R"("family":{"a":1.0,"n0":2,"nu":2.0},)" + imm +
                   R"(,"n_grid":[5],"cap":64})";
        };
        CHECK_THROWS_AS(parse(R"({"schema":"bpve-experiment-1",
            "experiment":"immigration",
            "family":{"a":1.0,"n0":2,"nu":2.0},"n_grid":[5],"cap":64})"),
                        std::invalid_argument); // immigration block required
        CHECK_THROWS_AS(parse(with(R"("immigration":4)")),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"("immigration":{"variant":"finite-support","q":[1.0],"x":1})")),
            std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"("immigration":{"q":[1.0]})")),
                        std::invalid_argument); // variant required
        CHECK_THROWS_AS(parse(with(R"("immigration":{"variant":7,"q":[1.0]})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(R"("immigration":{"variant":"gamma","q":[1.0]})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"("immigration":{"variant":"finite-support","q":[1.0],"lambda1":1.0})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(R"("immigration":{"variant":"finite-support"})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(R"("immigration":{"variant":"finite-support","q":[]})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"("immigration":{"variant":"finite-support","q":[1.0,-1.0]})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"("immigration":{"variant":"finite-support","q":[0.0,0.0]})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"("immigration":{"variant":"poisson","lambda1":0.5,"q":[1.0]})")),
            std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"("immigration":{"variant":"poisson"})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(R"("immigration":{"variant":"poisson","lambda1":0.0})")),
            std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(R"("immigration":{"variant":"poisson","lambda1":-2.0})")),
            std::invalid_argument);
        // conditional_mean belongs to the yaglom experiment only
        CHECK_THROWS_AS(
            parse(std::string(R"({"schema":"bpve-experiment-1",)") +
                  R"("experiment":"immigration",)" +
                  R"("family":{"a":1.0,"n0":2,"nu":2.0},)" +
                  R"("immigration":{"variant":"finite-support","q":[1.0]},)" +
                  R"("n_grid":[5],"cap":64,)" +
                  R"("tolerances":{"conditional_mean":0.1}})"),
            std::invalid_argument);
        // a valid poisson block parses
        ExperimentConfig pois =
            parse(with(R"("immigration":{"variant":"poisson","lambda1":0.25})"));
        CHECK(pois.immigration_variant == "poisson");
        CHECK(pois.lambda1 == 0.25);
        CHECK(pois.q.empty());
    }

    SUBCASE("identities structure") {
        auto with = [](const std::string& patch) {
            return std::string(R"({"schema":"bpve-experiment-1",)") +
                   R"("experiment":"identities")" + patch + "}";
        };
        CHECK_THROWS_AS(parse(with(R"(,"max_k":0)")), std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"max_k":21)")), std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"max_L":0)")), std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"n_rationals":0)")),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"family":{"a":1.0,"n0":2,"nu":2.0})")),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"seed":-1)")), std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"seed":1.5)")), std::invalid_argument);
        ExperimentConfig defaults = parse(with(""));
        CHECK(defaults.max_k == 12);
        CHECK(defaults.max_L == 10);
        CHECK(defaults.n_rationals == 50);
        CHECK(defaults.seed == 20260825u);
    }

    SUBCASE("montecarlo structure") {
        auto with = [](const std::string& patch) {
            return std::string(R"({"schema":"bpve-experiment-1",)") +
                   R"("experiment":"montecarlo-xcheck",)" +
                   R"("family":{"a":1.0,"n0":2,"nu":2.0},)" +
                   R"("n_grid":[5],"cap":64)" + patch + "}";
        };
        CHECK_THROWS_AS(parse(with(R"(,"replicates":0)")),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"threads":0)")), std::invalid_argument);
        CHECK_THROWS_AS(
            parse(with(
                R"(,"immigration":{"variant":"finite-support","q":[1.0]})")),
            std::invalid_argument);
        CHECK_THROWS_AS(parse(with(R"(,"tolerances":{"terminal_tv":0.1})")),
                        std::invalid_argument);
        ExperimentConfig defaults = parse(with(""));
        CHECK(defaults.replicates == 100000);
        CHECK(defaults.threads == 1);
    }
}

TEST_CASE("yaglom run on a short grid meets the default tolerances") {
    ExperimentReport report =
        run_experiment(parse_experiment_config(kYaglomSmall));
    CHECK(report.pass);
    CHECK(report.violations.empty());
    CHECK(report.columns ==
          std::vector<std::string>{"n", "tv_to_limit", "lost_mass", "survival",
                                   "conditional_mean"});
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0][0] == 5.0);
    CHECK(report.rows[1][0] == 25.0);
    CHECK(report.rows[1][1] < report.rows[0][1]); // tv shrinks with n
    CHECK(report.rows[1][1] < 0.05);
    CHECK(report.rows[1][2] < 1e-9); // truncation loss at cap 64
    CHECK(report.rows[1][3] > 0.0);
    CHECK(report.rows[1][3] < 1.0);
    CHECK(std::fabs(report.rows[1][4] - 2.0) < 0.1);
    CHECK(report.negbin_cross_tv == -1.0);
}

TEST_CASE("immigration run cross-checks the single-atom negative binomial") {
    ExperimentReport q1 =
        run_experiment(parse_experiment_config(kImmigrationQ1Small));
    CHECK(q1.pass);
    CHECK(q1.columns == std::vector<std::string>{"n", "tv_to_limit",
                                                 "lost_mass", "total_mass",
                                                 "mean"});
    REQUIRE(q1.rows.size() == 2);
    CHECK(q1.rows[1][1] < q1.rows[0][1]);
    CHECK(q1.rows[1][1] < 0.05);
    CHECK(std::fabs(q1.rows[1][3] - 1.0) < 1e-9); // total mass
    CHECK(q1.negbin_cross_tv >= 0.0);
    CHECK(q1.negbin_cross_tv <= 1e-10);

    ExperimentReport q3 =
        run_experiment(parse_experiment_config(kImmigrationQ3Small));
    CHECK(q3.pass);
    CHECK(q3.negbin_cross_tv == -1.0); // cross-check only applies to q = (q1)

    ExperimentConfig strict = parse_experiment_config(kImmigrationQ1Small);
    strict.n_grid = {5};
    strict.terminal_tv = 0.9;
    strict.negbin_tv = 1e-30;
    ExperimentReport failed = run_experiment(strict);
    CHECK(!failed.pass);
    REQUIRE(failed.violations.size() == 1);
    CHECK(failed.violations[0].rfind("negative-binomial cross-check tv", 0) ==
          0);
}

TEST_CASE("identities run reports six exact suites") {
    ExperimentReport report =
        run_experiment(parse_experiment_config(kIdentitiesSmall));
    CHECK(report.pass);
    CHECK(report.columns == std::vector<std::string>{"suite", "cases",
                                                     "failures",
                                                     "max_abs_error"});
    REQUIRE(report.suites.size() == 6);
    CHECK(report.suites[0].name == "alternating-binomial-sum");
    CHECK(report.suites[1].name == "double-binomial-expansion");
    CHECK(report.suites[2].name == "stirling-inversion");
    CHECK(report.suites[3].name == "falling-factorial");
    CHECK(report.suites[4].name == "moment-consistency");
    CHECK(report.suites[5].name == "coefficient-round-trip");
    for (const auto& suite : report.suites) {
        CAPTURE(suite.name);
        CHECK(suite.cases > 0);
        CHECK(suite.failures == 0);
        CHECK(suite.max_abs_error == 0.0);
    }
    CHECK(report.rows.empty()); // identity results live in .suites
}

TEST_CASE("montecarlo run agrees with the exact engine and is reproducible") {
    ExperimentConfig config = parse_experiment_config(kMontecarloSmall);
    ExperimentReport report = run_experiment(config);
    CHECK(report.pass);
    CHECK(report.columns ==
          std::vector<std::string>{"n", "empirical_tv", "exact_survival",
                                   "empirical_survival", "survival_se",
                                   "replicates"});
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    CHECK(row[0] == 30.0);
    CHECK(row[1] <= 0.02);
    CHECK(row[5] == 20000.0);
    CHECK(std::fabs(row[3] - row[2]) <= 4.0 * row[4] + 1e-9);

    ExperimentReport again = run_experiment(config);
    CHECK(again.rows == report.rows); // same seed, same layout, same numbers

    config.empirical_tv = 1e-6;
    ExperimentReport failed = run_experiment(config);
    CHECK(!failed.pass);
    REQUIRE(!failed.violations.empty());
    CHECK(failed.violations[0].rfind("empirical tv", 0) == 0);
}

TEST_CASE("failed tolerances produce pointed violation messages") {
    ExperimentConfig c = parse_experiment_config(kYaglomSmall);
    c.terminal_tv = 1e-6;
    c.conditional_mean_tol = 1e-6;
    ExperimentReport report = run_experiment(c);
    CHECK(!report.pass);
    REQUIRE(report.violations.size() == 2);
    CHECK(report.violations[0].rfind("terminal tv_to_limit", 0) == 0);
    CHECK(report.violations[0].find("is not below") != std::string::npos);
    CHECK(report.violations[1].rfind("terminal conditional mean", 0) == 0);

    ExperimentConfig unknown;
    unknown.experiment = "nope";
    CHECK_THROWS_AS(run_experiment(unknown), std::invalid_argument);
}

TEST_CASE("report files are deterministic and mirror the verdict") {
    const fs::path root = fresh_dir("bpve-report-test");

    ExperimentConfig config = parse_experiment_config(kYaglomSmall);
    ExperimentReport report = run_experiment(config);

    const ReportPaths first =
        write_report_files(report, (root / "a" / "deep").string());
    const ReportPaths second = write_report_files(report, (root / "b").string());
    CHECK(fs::path(first.csv).filename() == "yaglom.csv");
    CHECK(fs::path(first.json).filename() == "yaglom.json");
    CHECK(slurp(first.csv) == slurp(second.csv));
    CHECK(slurp(first.json) == slurp(second.json));

    const std::string csv = slurp(first.csv);
    std::istringstream lines(csv);
    std::string header, row1, row2;
    REQUIRE(static_cast<bool>(std::getline(lines, header)));
    REQUIRE(static_cast<bool>(std::getline(lines, row1)));
    REQUIRE(static_cast<bool>(std::getline(lines, row2)));
    CHECK(header == "n,tv_to_limit,lost_mass,survival,conditional_mean");
    CHECK(row1.rfind("5,", 0) == 0); // n is written as an integer
    CHECK(row2.rfind("25,", 0) == 0);

    nlohmann::json sidecar = nlohmann::json::parse(slurp(first.json));
    CHECK(sidecar.at("schema") == "bpve-report-1");
    CHECK(sidecar.at("experiment") == "yaglom");
    CHECK(sidecar.at("pass") == true);
    CHECK(sidecar.at("violations").empty());
    CHECK(sidecar.at("columns").size() == 5);
    REQUIRE(sidecar.at("rows").size() == 2);
    CHECK(sidecar.at("rows")[0][0] == 5);
    CHECK(sidecar.at("config").at("cap") == 64);
    CHECK(!sidecar.contains("negbin_cross_tv"));

    // the single-atom immigration run records its cross-check in the sidecar
    ExperimentConfig q1 = parse_experiment_config(kImmigrationQ1Small);
    q1.out_name = "short-run";
    ExperimentReport q1report = run_experiment(q1);
    const ReportPaths q1paths =
        write_report_files(q1report, (root / "c").string());
    CHECK(fs::path(q1paths.csv).filename() == "short-run.csv");
    nlohmann::json q1side = nlohmann::json::parse(slurp(q1paths.json));
    CHECK(q1side.at("config").at("out") == "short-run");
    REQUIRE(q1side.contains("negbin_cross_tv"));
    CHECK(q1side.at("negbin_cross_tv").get<double>() <= 1e-10);

    // identities reports carry the suite table instead of numeric rows
    ExperimentReport idreport =
        run_experiment(parse_experiment_config(kIdentitiesSmall));
    const ReportPaths idpaths =
        write_report_files(idreport, (root / "d").string());
    const std::string idcsv = slurp(idpaths.csv);
    CHECK(idcsv.rfind("suite,cases,failures,max_abs_error\n", 0) == 0);
    CHECK(idcsv.find("\nstirling-inversion,") != std::string::npos);
    nlohmann::json idside = nlohmann::json::parse(slurp(idpaths.json));
    REQUIRE(idside.at("rows").size() == 6);
    CHECK(idside.at("rows")[0][0] == "alternating-binomial-sum");
    CHECK(idside.at("rows")[0][2] == 0);

    fs::remove_all(root);
}
