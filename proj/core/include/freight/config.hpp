#pragma once

/// @file config.hpp
/// @brief Run configuration: input paths plus model parameters, loaded
/// from a JSON file.  Relative paths resolve against the config file's
/// directory.

#include <optional>
#include <string>

#include "freight/damages.hpp"
#include "freight/modal_shift.hpp"
#include "freight/network.hpp"

namespace freight {

struct RunConfig {
    // Input files (absolute after loading).
    std::string links_path;
    std::string county_zones_path;
    std::string tract_zones_path;
    std::string county_covariates_path;
    std::string tract_covariates_path;
    std::string emission_factors_path;
    std::string msc_header_path;
    std::string msc_values_path;
    std::string sr_matrix_path;
    std::string shipments_path;

    std::string factor_set;  // key into the emission-factors file

    VmtParams vmt;
    VslAdjustment vsl;
    int vsl_target_dollar_year = 2017;
    SocialCostOfCarbon scc;
    RailFuelParams rail;
    /// When set, used in place of the fuel-chemistry derivation
    /// (g/ton-mile per pollutant).
    std::optional<PollutantDoubles> rail_ef_override;
    ShiftScenario scenario;

    unsigned workers = 1;
};

/// Parse and validate a config file.  Parameter values are checked here;
/// the existence of each input file is checked by the stage that reads it.
RunConfig load_config(const std::string& path);

}  // namespace freight
