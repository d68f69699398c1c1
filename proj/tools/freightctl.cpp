// freightctl: batch CLI over the freight emissions and damages engine.
//
// Exit codes: 0 success, 1 config/input error, 2 numerical or data
// consistency failure.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "freight/errors.hpp"
#include "freight/pipeline.hpp"
#include "freight/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bottom-up freight trucking emissions, damages, and scenario engine"};
    app.set_version_flag("--version", std::string(freight::kEngineVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    unsigned workers = 0;  // 0: take the config's value

    app.add_option("--config", config_path, "run configuration JSON")->required();
    app.add_option("--out", out_dir, "output directory (default: out)");
    app.add_option("--workers", workers, "worker threads (overrides config)");

    for (const auto& name : freight::pipeline_commands()) {
        std::string description;
        if (name == "build-inventory") description = "link VMT and zone emission ledgers";
        else if (name == "damages") description = "VSL-adjusted MSC damages and CO2 damages";
        else if (name == "sr-ledger") description = "source-receptor import/export ledger";
        else if (name == "ej-regress") description = "OLS and logit demographic regressions";
        else if (name == "modal-shift") description = "truck-to-rail shift sweep";
        else description = "run the full pipeline";
        // global flags may follow the subcommand
        app.add_subcommand(name, description)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    freight::RunOptions options;
    options.config_path = config_path;
    options.out_dir = out_dir;
    if (workers > 0) options.workers_override = workers;

    try {
        freight::run_command(command, options);
    } catch (const freight::ConfigError& e) {
        std::cerr << "error [" << command << "]: " << e.what() << "\n";
        return kExitConfig;
    } catch (const freight::DataError& e) {
        std::cerr << "error [" << command << "]: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error [" << command << "]: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
