#include "freight/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "freight/errors.hpp"

namespace freight {

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return p.lexically_normal().string();
    return (base / p).lexically_normal().string();
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config JSON in " + path + ": " + e.what());
    }

    const std::filesystem::path base = std::filesystem::absolute(path).parent_path();
    RunConfig cfg;
    try {
        cfg.links_path = resolve(base, doc.value("links", ""));
        if (doc.contains("zones")) {
            cfg.county_zones_path = resolve(base, doc["zones"].value("county", ""));
            cfg.tract_zones_path = resolve(base, doc["zones"].value("tract", ""));
        }
        if (doc.contains("covariates")) {
            cfg.county_covariates_path = resolve(base, doc["covariates"].value("county", ""));
            cfg.tract_covariates_path = resolve(base, doc["covariates"].value("tract", ""));
        }
        cfg.emission_factors_path = resolve(base, doc.value("emission_factors", ""));
        if (doc.contains("msc_grid")) {
            cfg.msc_header_path = resolve(base, doc["msc_grid"].value("header", ""));
            cfg.msc_values_path = resolve(base, doc["msc_grid"].value("values", ""));
        }
        cfg.sr_matrix_path = resolve(base, doc.value("sr_matrix", ""));
        cfg.shipments_path = resolve(base, doc.value("shipments", ""));
        cfg.factor_set = doc.value("factor_set", "greet");

        if (doc.contains("vmt")) {
            const auto& v = doc["vmt"];
            cfg.vmt.diesel_fraction = v.value("diesel_fraction", cfg.vmt.diesel_fraction);
            cfg.vmt.truck_fraction = v.value("truck_fraction", cfg.vmt.truck_fraction);
            cfg.vmt.cagr = v.value("cagr", cfg.vmt.cagr);
            cfg.vmt.base_year = v.value("base_year", cfg.vmt.base_year);
            cfg.vmt.target_year = v.value("target_year", cfg.vmt.target_year);
            cfg.vmt.days_per_year = v.value("days_per_year", cfg.vmt.days_per_year);
        }
        if (doc.contains("vsl")) {
            const auto& v = doc["vsl"];
            cfg.vsl.income_factor_target = v.value("income_target", cfg.vsl.income_factor_target);
            cfg.vsl.income_factor_base = v.value("income_base", cfg.vsl.income_factor_base);
            cfg.vsl.cpi_target = v.value("cpi_target", cfg.vsl.cpi_target);
            cfg.vsl.cpi_base = v.value("cpi_base", cfg.vsl.cpi_base);
            cfg.vsl_target_dollar_year = v.value("target_dollar_year", cfg.vsl_target_dollar_year);
        }
        if (doc.contains("scc")) {
            const auto& v = doc["scc"];
            cfg.scc.usd_per_ton = v.value("usd_per_ton", cfg.scc.usd_per_ton);
            cfg.scc.dollar_year = v.value("dollar_year", cfg.scc.dollar_year);
        }
        if (doc.contains("rail")) {
            const auto& v = doc["rail"];
            cfg.rail.fuel_density_g_per_gal = v.value("fuel_density_g_per_gal", cfg.rail.fuel_density_g_per_gal);
            cfg.rail.sulfur_mass_fraction = v.value("sulfur_mass_fraction", cfg.rail.sulfur_mass_fraction);
            cfg.rail.s_to_so2_fraction = v.value("s_to_so2_fraction", cfg.rail.s_to_so2_fraction);
            cfg.rail.carbon_mass_fraction = v.value("carbon_mass_fraction", cfg.rail.carbon_mass_fraction);
            cfg.rail.mol_ratio_co2_c = v.value("mol_ratio_co2_c", cfg.rail.mol_ratio_co2_c);
            cfg.rail.fuel_efficiency_tonmi_per_gal =
                v.value("fuel_efficiency_tonmi_per_gal", cfg.rail.fuel_efficiency_tonmi_per_gal);
            cfg.rail.pm10_g_per_gal = v.value("pm10_g_per_gal", cfg.rail.pm10_g_per_gal);
            cfg.rail.pm25_of_pm10 = v.value("pm25_of_pm10", cfg.rail.pm25_of_pm10);
            cfg.rail.nox_g_per_gal = v.value("nox_g_per_gal", cfg.rail.nox_g_per_gal);
        }
        if (doc.contains("rail_ef_override")) {
            PollutantDoubles override_ef;
            for (const auto& [pol_name, value] : doc["rail_ef_override"].items()) {
                override_ef[parse_pollutant(pol_name)] = value.get<double>();
            }
            cfg.rail_ef_override = override_ef;
        }
        if (doc.contains("scenario")) {
            const auto& v = doc["scenario"];
            cfg.scenario.distance_threshold_mi =
                v.value("distance_threshold_mi", cfg.scenario.distance_threshold_mi);
            cfg.scenario.payload_tons = v.value("payload_tons", cfg.scenario.payload_tons);
        }
        cfg.workers = doc.value("workers", cfg.workers);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config JSON in " + path + ": " + e.what());
    }

    if (cfg.workers < 1) throw ConfigError("worker count must be at least 1");
    cfg.vmt.validate();
    cfg.vsl.validate();
    cfg.scc.validate();
    cfg.rail.validate();
    ShiftScenario probe = cfg.scenario;
    probe.fraction_shifted = 0.0;
    probe.validate();
    return cfg;
}

}  // namespace freight
