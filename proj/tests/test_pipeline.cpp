#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "freight/csv.hpp"
#include "freight/errors.hpp"
#include "freight/pipeline.hpp"

using namespace freight;
namespace fs = std::filesystem;

namespace {

const std::string kDemoConfig =
    std::string(FREIGHT_TESTS_FIXTURE_DIR) + "/demo/demo_config.json";

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "freight_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::map<std::string, std::string> read_outputs(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        files[entry.path().filename().string()] = read_file(entry.path().string());
    }
    return files;
}

RunOptions options_for(const fs::path& out, unsigned workers) {
    RunOptions opt;
    opt.config_path = kDemoConfig;
    opt.out_dir = out.string();
    opt.workers_override = workers;
    opt.quiet = true;
    return opt;
}

std::size_t count_csv_rows(const std::string& content) {
    std::size_t rows = 0;
    for (char c : content) rows += (c == '\n');
    return rows > 0 ? rows - 1 : 0;  // minus header
}

}  // namespace

TEST_CASE("build-inventory writes ledgers, rejections, and a manifest") {
    const fs::path out = fresh_dir("inventory");
    const RunManifest manifest = run_command("build-inventory", options_for(out, 1));

    CHECK(manifest.counts.at("links_total") == 194);
    CHECK(manifest.counts.at("links_accepted") == 192);
    CHECK(manifest.counts.at("links_rejected") == 2);
    CHECK(manifest.counts.at("zones_county") == 48);
    CHECK(manifest.counts.at("zones_tract") == 192);
    CHECK(manifest.counts.at("links_unassigned_county") == 0);
    CHECK(manifest.counts.at("links_unassigned_tract") == 0);

    const auto files = read_outputs(out);
    REQUIRE(files.count("inventory_county.csv"));
    REQUIRE(files.count("inventory_tract.csv"));
    REQUIRE(files.count("link_rejections.csv"));
    REQUIRE(files.count("run_manifest.json"));

    CHECK(count_csv_rows(files.at("inventory_county.csv")) == 48 * 4);
    CHECK(count_csv_rows(files.at("inventory_tract.csv")) == 192 * 4);
    CHECK(count_csv_rows(files.at("link_rejections.csv")) == 2);
    CHECK(files.at("inventory_county.csv").find("t_metric") != std::string::npos);
}

TEST_CASE("rerunning a command produces byte-identical data files") {
    const fs::path out1 = fresh_dir("rerun_a");
    const fs::path out2 = fresh_dir("rerun_b");
    run_command("build-inventory", options_for(out1, 1));
    run_command("build-inventory", options_for(out2, 1));

    const auto files1 = read_outputs(out1);
    const auto files2 = read_outputs(out2);
    REQUIRE(files1.size() == files2.size());
    for (const auto& [name, content] : files1) {
        if (name == "run_manifest.json") continue;
        CHECK(files2.at(name) == content);
    }

    // Manifests agree except for the wall time.
    auto m1 = nlohmann::json::parse(files1.at("run_manifest.json"));
    auto m2 = nlohmann::json::parse(files2.at("run_manifest.json"));
    m1["wall_time_seconds"] = 0.0;
    m2["wall_time_seconds"] = 0.0;
    CHECK(m1 == m2);
}

TEST_CASE("full pipeline is identical at 1 and 8 workers") {
    const fs::path out1 = fresh_dir("workers_1");
    const fs::path out8 = fresh_dir("workers_8");
    run_command("all", options_for(out1, 1));
    run_command("all", options_for(out8, 8));

    const auto files1 = read_outputs(out1);
    const auto files8 = read_outputs(out8);
    REQUIRE(files1.size() == files8.size());
    for (const auto& [name, content] : files1) {
        if (name == "run_manifest.json") continue;
        CHECK(files8.at(name) == content);
    }

    // The full output set from one run.
    for (const char* expected :
         {"inventory_county.csv", "inventory_tract.csv", "link_rejections.csv",
          "damages_county.csv", "damages_national.csv", "co2_damages_county.csv",
          "sr_ledger_county.csv", "sr_ledger_by_pollutant.csv", "ols_county.csv",
          "ols_tract.csv", "logit_county.csv", "logit_tract.csv", "qq_county.csv",
          "qq_tract.csv", "studentized_county.csv", "studentized_tract.csv",
          "modal_shift.csv", "run_manifest.json"}) {
        CHECK(files1.count(expected) == 1);
    }
}

TEST_CASE("damages stage labels dollar years and records the VSL factor") {
    const fs::path out = fresh_dir("damages");
    const RunManifest manifest = run_command("damages", options_for(out, 1));

    CHECK(manifest.parameters.at("vsl_factor") ==
          doctest::Approx((1.174 / 1.010) * (245.0 / 218.0)));

    const auto files = read_outputs(out);
    const std::string& national = files.at("damages_national.csv");
    CHECK(national.find("PM2.5") != std::string::npos);
    CHECK(national.find(",2017") != std::string::npos);  // air pollutant dollar year
    CHECK(national.find(",2020") != std::string::npos);  // SCC dollar year
    CHECK(count_csv_rows(files.at("damages_county.csv")) == 48 * 3);
}

TEST_CASE("sr-ledger stage emits headline and per-pollutant ledgers") {
    const fs::path out = fresh_dir("srledger");
    run_command("sr-ledger", options_for(out, 1));

    const auto files = read_outputs(out);
    const CsvTable headline = read_csv((out / "sr_ledger_county.csv").string());
    CHECK(headline.rows.size() == 48);

    // Flags must include both importers and exporters on this fixture.
    const std::size_t flag_col = headline.column("net_importer");
    std::size_t importers = 0;
    for (const auto& row : headline.rows) importers += (row.at(flag_col) == "true");
    CHECK(importers > 0);
    CHECK(importers < headline.rows.size());

    CHECK(count_csv_rows(files.at("sr_ledger_by_pollutant.csv")) == 48 * 3);
}

TEST_CASE("ej-regress emits regression tables and diagnostics") {
    const fs::path out = fresh_dir("ejregress");
    const RunManifest manifest = run_command("ej-regress", options_for(out, 1));
    CHECK(manifest.counts.count("regression_rows_dropped") == 1);

    const CsvTable ols = read_csv((out / "ols_county.csv").string());
    // 10 coefficient rows + 9 stat rows
    CHECK(ols.rows.size() == 19);
    CHECK(ols.header.size() == 1 + 3 * 3);

    bool saw_constant = false, saw_r2 = false;
    for (const auto& row : ols.rows) {
        saw_constant = saw_constant || row.at(0) == "constant";
        saw_r2 = saw_r2 || row.at(0) == "r_squared";
    }
    CHECK(saw_constant);
    CHECK(saw_r2);

    const CsvTable logit = read_csv((out / "logit_county.csv").string());
    bool saw_aic = false;
    for (const auto& row : logit.rows) saw_aic = saw_aic || row.at(0) == "aic";
    CHECK(saw_aic);

    const CsvTable qq = read_csv((out / "qq_tract.csv").string());
    CHECK(qq.rows.size() > 100);  // three pollutants x one point per design row
}

TEST_CASE("modal-shift emits the ten-step sweep") {
    const fs::path out = fresh_dir("modalshift");
    run_command("modal-shift", options_for(out, 1));

    const CsvTable sweep = read_csv((out / "modal_shift.csv").string());
    CHECK(sweep.rows.size() == 10 * 4);
    CHECK(sweep.rows.front().at(0) == "0.05");
    CHECK(sweep.rows.back().at(0) == "0.5");
}

TEST_CASE("modal-shift honors a rail emission-factor override table") {
    const fs::path out = fresh_dir("modal_override");
    const fs::path demo = fs::path(FREIGHT_TESTS_FIXTURE_DIR) / "demo";

    // Same inputs as the demo config, plus an override table; absolute
    // paths because the config resolves relative to its own directory.
    nlohmann::json cfg;
    cfg["links"] = (demo / "links.csv").string();
    cfg["zones"] = {{"county", (demo / "counties.json").string()},
                    {"tract", (demo / "tracts.json").string()}};
    cfg["emission_factors"] = (demo / "emission_factors.json").string();
    cfg["factor_set"] = "greet";
    cfg["shipments"] = (demo / "shipments.csv").string();
    cfg["rail_ef_override"] = {{"PM2.5", 0.1575}, {"SO2", 0.0049}, {"NOx", 0.0001},
                               {"CO2", 10.6427}};
    const fs::path cfg_path = out / "override_config.json";
    {
        std::ofstream f(cfg_path);
        f << cfg.dump(1);
    }

    RunOptions opt;
    opt.config_path = cfg_path.string();
    opt.out_dir = (out / "results").string();
    opt.quiet = true;
    run_command("modal-shift", opt);

    // With the override, recompute the expected SO2 row at f = 0.05.
    const CsvTable sweep = read_csv((out / "results" / "modal_shift.csv").string());
    const CsvTable base_sweep = [&] {
        const fs::path base_out = fresh_dir("modal_base");
        run_command("modal-shift", options_for(base_out, 1));
        return read_csv((base_out / "modal_shift.csv").string());
    }();
    // Same shape, different values (the override is far from the derived factors).
    REQUIRE(sweep.rows.size() == base_sweep.rows.size());
    CHECK(sweep.rows[1].at(2) != base_sweep.rows[1].at(2));
}

TEST_CASE("missing inputs abort with a diagnostic naming the file") {
    const fs::path out = fresh_dir("missing");
    const fs::path bad_config = out / "bad_config.json";
    {
        std::ofstream cfg(bad_config);
        cfg << R"({"links": "no_such_links.csv"})";
    }
    RunOptions opt;
    opt.config_path = bad_config.string();
    opt.out_dir = (out / "results").string();
    opt.quiet = true;
    CHECK_THROWS_WITH_AS(run_command("build-inventory", opt),
                         doctest::Contains("links file not found"), ConfigError);

    CHECK_THROWS_AS(run_command("all", RunOptions{"/nonexistent/config.json", out.string(),
                                                  std::nullopt, true}),
                    ConfigError);
    CHECK_THROWS_AS(run_command("fly-to-the-moon", options_for(out, 1)), ConfigError);
}
