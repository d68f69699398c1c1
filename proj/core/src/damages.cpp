#include "freight/damages.hpp"

#include <fstream>

#include <json.hpp>

#include "freight/csv.hpp"
#include "freight/errors.hpp"

namespace freight {

namespace {

std::size_t air_index(Pollutant p) {
    if (!MSCGrid::is_valued(p)) throw DataError("CO2 has no marginal-social-cost surface");
    return static_cast<std::size_t>(p);
}

}  // namespace

MSCGrid::MSCGrid(GridSpec grid, int dollar_year, double base_vsl, int population_year)
    : grid_(grid), dollar_year_(dollar_year), base_vsl_(base_vsl), population_year_(population_year) {
    grid_.validate();
    const std::size_t n_cells = static_cast<std::size_t>(grid_.n_cols) * grid_.n_rows;
    for (auto& v : values_) v.assign(n_cells, 0.0);
}

double MSCGrid::value(Pollutant p, int cell_index) const {
    return values_[air_index(p)].at(static_cast<std::size_t>(cell_index));
}

void MSCGrid::set_value(Pollutant p, int cell_index, double usd_per_ton) {
    if (usd_per_ton < 0.0) throw DataError("marginal social cost must be non-negative");
    values_[air_index(p)].at(static_cast<std::size_t>(cell_index)) = usd_per_ton;
}

MSCGrid load_msc_grid(const std::string& header_path, const std::string& values_path) {
    std::ifstream in(header_path);
    if (!in) throw ConfigError("MSC grid header not found: " + header_path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed MSC header JSON in " + header_path + ": " + e.what());
    }

    GridSpec spec;
    int dollar_year = 2010;
    double base_vsl = 8.6e6;
    int population_year = 2017;
    try {
        spec.origin = Point{doc.at("origin").at(0).get<double>(), doc.at("origin").at(1).get<double>()};
        spec.cell_size = doc.at("cell_size").get<double>();
        spec.n_cols = doc.at("n_cols").get<int>();
        spec.n_rows = doc.at("n_rows").get<int>();
        dollar_year = doc.at("dollar_year").get<int>();
        base_vsl = doc.at("base_vsl").get<double>();
        population_year = doc.at("population_year").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed MSC header JSON in " + header_path + ": " + e.what());
    }

    MSCGrid grid(spec, dollar_year, base_vsl, population_year);

    const CsvTable table = read_csv(values_path);
    const std::size_t c_pol = table.column("pollutant");
    const std::size_t c_col = table.column("col");
    const std::size_t c_row = table.column("row");
    const std::size_t c_usd = table.column("usd_per_ton");
    for (const auto& row : table.rows) {
        const Pollutant p = parse_pollutant(row.at(c_pol));
        const auto col = parse_double(row.at(c_col));
        const auto grow = parse_double(row.at(c_row));
        const auto usd = parse_double(row.at(c_usd));
        if (!col || !grow || !usd) throw ConfigError("malformed MSC row in " + values_path);
        const int ci = static_cast<int>(*col);
        const int ri = static_cast<int>(*grow);
        if (ci < 0 || ci >= spec.n_cols || ri < 0 || ri >= spec.n_rows) {
            throw ConfigError("MSC cell out of grid range in " + values_path);
        }
        grid.set_value(p, spec.cell_index(ci, ri), *usd);
    }
    return grid;
}

void VslAdjustment::validate() const {
    if (!(income_factor_target > 0.0 && income_factor_base > 0.0 && cpi_target > 0.0 &&
          cpi_base > 0.0)) {
        throw ConfigError("VSL adjustment factors must be positive");
    }
}

double vsl_factor(const VslAdjustment& adj) {
    adj.validate();
    return (adj.income_factor_target / adj.income_factor_base) * (adj.cpi_target / adj.cpi_base);
}

MSCGrid scale_msc(const MSCGrid& grid, double factor, int new_dollar_year) {
    if (!(factor > 0.0)) throw ConfigError("MSC scale factor must be positive");
    MSCGrid scaled(grid.grid(), new_dollar_year, grid.base_vsl() * factor, grid.population_year());
    const int n_cells = grid.grid().n_cols * grid.grid().n_rows;
    for (Pollutant p : kAirPollutants) {
        for (int i = 0; i < n_cells; ++i) {
            scaled.set_value(p, i, grid.value(p, i) * factor);
        }
    }
    return scaled;
}

PollutantDoubles zone_msc(std::span<const Polygon> zone_parts, const MSCGrid& grid) {
    const auto weights = overlay_weights(zone_parts, grid.grid());
    PollutantDoubles msc;
    for (Pollutant p : kAirPollutants) {
        double value = 0.0;
        for (const auto& [cell, w] : weights) value += w * grid.value(p, cell);
        msc[p] = value;
    }
    return msc;
}

void SocialCostOfCarbon::validate() const {
    if (usd_per_ton < 0.0) throw ConfigError("social cost of carbon must be non-negative");
}

ZoneDamages zone_damages(const EmissionsLedger& ledger,
                         const std::map<std::string, PollutantDoubles>& zone_mscs) {
    ZoneDamages result;
    for (const auto& [zone_id, tons] : ledger.entries()) {
        const auto msc_it = zone_mscs.find(zone_id);
        PollutantDoubles usd;
        for (Pollutant p : kAirPollutants) {
            if (tons[p] == 0.0) continue;
            if (msc_it == zone_mscs.end()) {
                throw DataError("no marginal social cost for emitting zone: " + zone_id);
            }
            usd[p] = msc_it->second[p] * tons[p];
        }
        for (Pollutant p : kAirPollutants) result.national[p] += usd[p];
        result.usd.emplace(zone_id, usd);
    }
    return result;
}

Co2Damages co2_damages(const EmissionsLedger& ledger, const SocialCostOfCarbon& scc) {
    scc.validate();
    Co2Damages result;
    for (const auto& [zone_id, tons] : ledger.entries()) {
        const double usd = tons[Pollutant::CO2] * scc.usd_per_ton;
        result.usd.emplace(zone_id, usd);
        result.national += usd;
    }
    return result;
}

}  // namespace freight
