#pragma once

/// @file damages.hpp
/// @brief Monetized damages: VSL-adjusted marginal social costs applied
/// to zone emissions, plus CO2 at the social cost of carbon.
///
/// The engine consumes an MSC surface already expressed for a stated
/// population year; only the VSL income/inflation scalar is applied
/// here.  One annual surface per pollutant, ground-level sources only.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "freight/geometry.hpp"
#include "freight/inventory.hpp"
#include "freight/pollutant.hpp"

namespace freight {

/// Per-pollutant $/ton surface on a regular grid.
class MSCGrid {
public:
    MSCGrid() = default;
    MSCGrid(GridSpec grid, int dollar_year, double base_vsl, int population_year);

    const GridSpec& grid() const { return grid_; }
    int dollar_year() const { return dollar_year_; }
    double base_vsl() const { return base_vsl_; }
    int population_year() const { return population_year_; }

    double value(Pollutant p, int cell_index) const;
    void set_value(Pollutant p, int cell_index, double usd_per_ton);

    /// The three valued species: PM2.5, SO2, NOx.
    static bool is_valued(Pollutant p) { return p != Pollutant::CO2; }

private:
    GridSpec grid_;
    int dollar_year_ = 2010;
    double base_vsl_ = 8.6e6;  // 2010 US$
    int population_year_ = 2017;
    std::array<std::vector<double>, 3> values_;  // indexed by air pollutant
};

/// Load an MSC grid from a JSON header (GridSpec + metadata) and a CSV of
/// (pollutant, col, row, usd_per_ton) triplets; unlisted cells are zero.
MSCGrid load_msc_grid(const std::string& header_path, const std::string& values_path);

struct VslAdjustment {
    double income_factor_target = 1.174;  // income growth adjustment, target year
    double income_factor_base = 1.010;    // income growth adjustment, base year
    double cpi_target = 245.0;
    double cpi_base = 218.0;

    void validate() const;
};

/// (I_target / I_base) x (CPI_target / CPI_base); multiplies the base VSL
/// and, through it, every marginal social cost.
double vsl_factor(const VslAdjustment& adj);

/// Every cell value multiplied by factor; dollar-year metadata updated.
MSCGrid scale_msc(const MSCGrid& grid, double factor, int new_dollar_year);

/// Area-weighted average MSC over the cells the zone touches.
/// CO2 entry is zero (valued via SCC, not the grid).
PollutantDoubles zone_msc(std::span<const Polygon> zone_parts, const MSCGrid& grid);

struct SocialCostOfCarbon {
    double usd_per_ton = 51.0;
    int dollar_year = 2020;

    void validate() const;
};

struct ZoneDamages {
    /// $/yr per zone per valued pollutant (CO2 slot unused).
    std::map<std::string, PollutantDoubles> usd;
    /// National total per valued pollutant, reduced in sorted-zone order.
    PollutantDoubles national;
};

/// damage(zone, p) = MSC(zone, p) x E(zone, p).  A zone with nonzero
/// emissions but no MSC entry is a fatal data error.
ZoneDamages zone_damages(const EmissionsLedger& ledger,
                         const std::map<std::string, PollutantDoubles>& zone_mscs);

struct Co2Damages {
    std::map<std::string, double> usd;  // $/yr per zone
    double national = 0.0;
};

/// Location-independent: tons x SCC.
Co2Damages co2_damages(const EmissionsLedger& ledger, const SocialCostOfCarbon& scc);

}  // namespace freight
