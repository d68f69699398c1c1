#pragma once

/// @file modal_shift.hpp
/// @brief Truck-to-rail shift scenarios: shipment ton-miles, class-1
/// rail emission factors from fuel chemistry, and the linear sweep over
/// the shifted fraction.

#include <span>
#include <string>
#include <vector>

#include "freight/inventory.hpp"
#include "freight/pollutant.hpp"

namespace freight {

struct ShipmentRecord {
    std::string shipment_id;
    double weight_lb = 0.0;
    double distance_mi = 0.0;  // routed origin-destination distance
    double weighting_factor = 0.0;
};

/// Shipments CSV: shipment_id, weight_lb, distance_mi, weighting_factor.
std::vector<ShipmentRecord> load_shipments(const std::string& path);

/// weighting factor x (weight/2000) x routed distance.
double shipment_tonmiles(const ShipmentRecord& rec);

/// Ton-miles of shipments longer than the distance threshold.
double eligible_tonmiles(std::span<const ShipmentRecord> shipments, double threshold_mi);
double total_tonmiles(std::span<const ShipmentRecord> shipments);

struct RailFuelParams {
    double fuel_density_g_per_gal = 3200.0;
    double sulfur_mass_fraction = 15e-6;  // ULSD, 15 ppm
    double s_to_so2_fraction = 0.978;     // fraction of fuel sulfur converted to SO2
    double carbon_mass_fraction = 0.87;
    double mol_ratio_so2_s = 2.0;          // 64 g SO2 / 32 g S
    double mol_ratio_co2_c = 44.0 / 12.0;  // set to 3.67 to follow the rounded derivation
    double fuel_efficiency_tonmi_per_gal = 472.0;
    double pm10_g_per_gal = 3.944;
    double pm25_of_pm10 = 0.97;
    double nox_g_per_gal = 134.770;

    void validate() const;
};

/// Fuel-chemistry emission factors, g/gal.
double rail_ef_so2(const RailFuelParams& params);
double rail_ef_co2(const RailFuelParams& params);

/// g/ton-mile per pollutant: the g/gal rates divided by the fleet fuel
/// efficiency.
PollutantDoubles rail_ef_per_tonmile(const RailFuelParams& params);

struct ShiftScenario {
    double fraction_shifted = 0.0;     // f in [0,1]
    double distance_threshold_mi = 300.0;
    double payload_tons = 20.0;        // average long-haul truck payload

    void validate() const;
};

/// Percent change in emissions per pollutant when a fraction f of the
/// eligible ton-miles moves from combination trucks to class-1 rail:
///   delta_grams(p) = f x (TM_eligible x EF_rail(p)
///                         - TM_eligible/payload x EF_truck(combination, p))
/// expressed relative to the baseline truck emissions (metric tons).
PollutantDoubles shift_change_percent(const PollutantDoubles& baseline_truck_tons,
                                      double eligible_tm, const ShiftScenario& scenario,
                                      const EmissionFactorSet& truck_efs,
                                      const PollutantDoubles& rail_ef_tonmile);

struct SweepRow {
    double fraction_shifted = 0.0;
    PollutantDoubles pct_change;
};

/// The Fig-S4 style sweep: f from 0.05 to 0.50 in steps of 0.05.
std::vector<SweepRow> shift_sweep(const PollutantDoubles& baseline_truck_tons, double eligible_tm,
                                  const ShiftScenario& scenario, const EmissionFactorSet& truck_efs,
                                  const PollutantDoubles& rail_ef_tonmile);

}  // namespace freight
