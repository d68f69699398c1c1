#include "freight/modal_shift.hpp"

#include "freight/csv.hpp"
#include "freight/errors.hpp"

namespace freight {

std::vector<ShipmentRecord> load_shipments(const std::string& path) {
    const CsvTable table = read_csv(path);
    const std::size_t c_id = table.column("shipment_id");
    const std::size_t c_weight = table.column("weight_lb");
    const std::size_t c_dist = table.column("distance_mi");
    const std::size_t c_wf = table.column("weighting_factor");

    std::vector<ShipmentRecord> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        ShipmentRecord rec;
        rec.shipment_id = row.at(c_id);
        const auto weight = parse_double(row.at(c_weight));
        const auto dist = parse_double(row.at(c_dist));
        const auto wf = parse_double(row.at(c_wf));
        if (!weight || !dist || !wf) {
            throw ConfigError("malformed shipment row for id " + rec.shipment_id);
        }
        rec.weight_lb = *weight;
        rec.distance_mi = *dist;
        rec.weighting_factor = *wf;
        if (rec.weight_lb < 0.0 || rec.distance_mi < 0.0 || rec.weighting_factor < 0.0) {
            throw ConfigError("negative shipment field for id " + rec.shipment_id);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

double shipment_tonmiles(const ShipmentRecord& rec) {
    return rec.weighting_factor * (rec.weight_lb / 2000.0) * rec.distance_mi;
}

double eligible_tonmiles(std::span<const ShipmentRecord> shipments, double threshold_mi) {
    double total = 0.0;
    for (const auto& rec : shipments) {
        if (rec.distance_mi > threshold_mi) total += shipment_tonmiles(rec);
    }
    return total;
}

double total_tonmiles(std::span<const ShipmentRecord> shipments) {
    double total = 0.0;
    for (const auto& rec : shipments) total += shipment_tonmiles(rec);
    return total;
}

void RailFuelParams::validate() const {
    if (!(fuel_density_g_per_gal > 0.0 && fuel_efficiency_tonmi_per_gal > 0.0 &&
          mol_ratio_so2_s > 0.0 && mol_ratio_co2_c > 0.0 && pm10_g_per_gal >= 0.0 &&
          nox_g_per_gal >= 0.0)) {
        throw ConfigError("rail fuel parameters must be positive");
    }
    if (!(s_to_so2_fraction > 0.0 && s_to_so2_fraction <= 1.0) ||
        !(carbon_mass_fraction > 0.0 && carbon_mass_fraction <= 1.0) ||
        !(pm25_of_pm10 > 0.0 && pm25_of_pm10 <= 1.0)) {
        throw ConfigError("rail fuel fractions must lie in (0,1]");
    }
    if (sulfur_mass_fraction < 0.0) throw ConfigError("sulfur content must be non-negative");
}

double rail_ef_so2(const RailFuelParams& params) {
    params.validate();
    return params.fuel_density_g_per_gal * params.s_to_so2_fraction * params.mol_ratio_so2_s *
           params.sulfur_mass_fraction;
}

double rail_ef_co2(const RailFuelParams& params) {
    params.validate();
    return params.fuel_density_g_per_gal * params.mol_ratio_co2_c * params.carbon_mass_fraction;
}

PollutantDoubles rail_ef_per_tonmile(const RailFuelParams& params) {
    params.validate();
    const double eff = params.fuel_efficiency_tonmi_per_gal;
    PollutantDoubles ef;
    ef[Pollutant::PM25] = params.pm10_g_per_gal * params.pm25_of_pm10 / eff;
    ef[Pollutant::NOx] = params.nox_g_per_gal / eff;
    ef[Pollutant::SO2] = rail_ef_so2(params) / eff;
    ef[Pollutant::CO2] = rail_ef_co2(params) / eff;
    return ef;
}

void ShiftScenario::validate() const {
    if (!(fraction_shifted >= 0.0 && fraction_shifted <= 1.0)) {
        throw ConfigError("fraction_shifted must lie in [0,1]");
    }
    if (!(payload_tons > 0.0)) throw ConfigError("payload_tons must be positive");
    if (distance_threshold_mi < 0.0) throw ConfigError("distance threshold must be non-negative");
}

PollutantDoubles shift_change_percent(const PollutantDoubles& baseline_truck_tons,
                                      double eligible_tm, const ShiftScenario& scenario,
                                      const EmissionFactorSet& truck_efs,
                                      const PollutantDoubles& rail_ef_tonmile) {
    scenario.validate();
    const double truck_vmt_equivalent = eligible_tm / scenario.payload_tons;
    PollutantDoubles pct;
    for (Pollutant p : kAllPollutants) {
        const double rail_grams = eligible_tm * rail_ef_tonmile[p];
        const double truck_grams =
            truck_vmt_equivalent * truck_efs.factor(VehicleClass::Combination, p);
        const double delta_grams = scenario.fraction_shifted * (rail_grams - truck_grams);
        const double baseline_grams = baseline_truck_tons[p] * kGramsPerMetricTon;
        if (baseline_grams == 0.0) {
            pct[p] = 0.0;
            continue;
        }
        pct[p] = 100.0 * delta_grams / baseline_grams;
    }
    return pct;
}

std::vector<SweepRow> shift_sweep(const PollutantDoubles& baseline_truck_tons, double eligible_tm,
                                  const ShiftScenario& scenario, const EmissionFactorSet& truck_efs,
                                  const PollutantDoubles& rail_ef_tonmile) {
    std::vector<SweepRow> rows;
    rows.reserve(10);
    for (int step = 1; step <= 10; ++step) {
        ShiftScenario s = scenario;
        s.fraction_shifted = 0.05 * step;
        rows.push_back(SweepRow{s.fraction_shifted,
                                shift_change_percent(baseline_truck_tons, eligible_tm, s, truck_efs,
                                                     rail_ef_tonmile)});
    }
    return rows;
}

}  // namespace freight
