#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "freight/modal_shift.hpp"
#include "support/oracles.hpp"

using namespace freight;

namespace {

EmissionFactorSet greet_factors() {
    return EmissionFactorSet(
        "greet", {
                     {{VehicleClass::Combination, Pollutant::PM25}, 0.086},
                     {{VehicleClass::Combination, Pollutant::SO2}, 0.0149},
                     {{VehicleClass::Combination, Pollutant::NOx}, 4.585},
                     {{VehicleClass::Combination, Pollutant::CO2}, 1588.0},
                     {{VehicleClass::SingleUnit, Pollutant::PM25}, 0.0467},
                     {{VehicleClass::SingleUnit, Pollutant::SO2}, 0.0070},
                     {{VehicleClass::SingleUnit, Pollutant::NOx}, 0.9383},
                     {{VehicleClass::SingleUnit, Pollutant::CO2}, 1414.0},
                 });
}

}  // namespace

TEST_CASE("shipment_tonmiles") {
    CHECK(shipment_tonmiles({"S1", 4000.0, 500.0, 10.0}) == doctest::Approx(10000.0));
    CHECK(shipment_tonmiles({"S2", 0.0, 500.0, 10.0}) == 0.0);

    // 100-record fixture against a direct spreadsheet-style sum.
    oracles::PortableRng rng(606);
    std::vector<ShipmentRecord> shipments;
    double expected_total = 0.0;
    double expected_eligible = 0.0;
    for (int i = 0; i < 100; ++i) {
        ShipmentRecord rec;
        rec.shipment_id = "S" + std::to_string(i);
        rec.weight_lb = 1000.0 + 40000.0 * rng.uniform();
        rec.distance_mi = 50.0 + 900.0 * rng.uniform();
        rec.weighting_factor = 1.0 + 20.0 * rng.uniform();
        shipments.push_back(rec);
        const double tm = rec.weighting_factor * (rec.weight_lb / 2000.0) * rec.distance_mi;
        expected_total += tm;
        if (rec.distance_mi > 300.0) expected_eligible += tm;
    }
    CHECK(total_tonmiles(shipments) == doctest::Approx(expected_total).epsilon(1e-9));
    CHECK(eligible_tonmiles(shipments, 300.0) == doctest::Approx(expected_eligible).epsilon(1e-9));
}

TEST_CASE("rail SO2 emission factor from fuel chemistry") {
    RailFuelParams params;
    CHECK(rail_ef_so2(params) == doctest::Approx(0.093888).epsilon(1e-12));

    params.sulfur_mass_fraction = 0.0;
    CHECK(rail_ef_so2(params) == 0.0);

    params.sulfur_mass_fraction = 30e-6;
    CHECK(rail_ef_so2(params) == doctest::Approx(2 * 0.093888).epsilon(1e-12));
}

TEST_CASE("rail CO2 emission factor from fuel chemistry") {
    RailFuelParams params;
    CHECK(rail_ef_co2(params) == doctest::Approx(10208.0).epsilon(1e-12));
    // within 0.2% of the rounded-ratio figure
    CHECK(std::abs(rail_ef_co2(params) - 10217.0) / 10217.0 < 0.002);

    SUBCASE("rounded molar-ratio mode") {
        params.mol_ratio_co2_c = 3.67;
        CHECK(rail_ef_co2(params) == doctest::Approx(10217.28).epsilon(1e-12));
    }

    SUBCASE("linear in the carbon fraction") {
        RailFuelParams half = params;
        half.carbon_mass_fraction = params.carbon_mass_fraction / 2.0;
        CHECK(rail_ef_co2(half) == doctest::Approx(rail_ef_co2(params) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("rail per-ton-mile factors divide by fuel efficiency") {
    const RailFuelParams params;
    const PollutantDoubles ef = rail_ef_per_tonmile(params);

    CHECK(3.944 * 0.97 == doctest::Approx(3.82568).epsilon(1e-12));
    CHECK(ef[Pollutant::PM25] == doctest::Approx(3.82568 / 472.0).epsilon(1e-12));
    CHECK(ef[Pollutant::SO2] == doctest::Approx(0.093888 / 472.0).epsilon(1e-12));
    CHECK(ef[Pollutant::NOx] == doctest::Approx(134.770 / 472.0).epsilon(1e-12));
    CHECK(ef[Pollutant::CO2] == doctest::Approx(10208.0 / 472.0).epsilon(1e-12));

    RailFuelParams rounded = params;
    rounded.mol_ratio_co2_c = 3.67;
    CHECK(rail_ef_per_tonmile(rounded)[Pollutant::CO2] ==
          doctest::Approx(10217.28 / 472.0).epsilon(1e-12));
}

TEST_CASE("shift_change_percent") {
    const EmissionFactorSet efs = greet_factors();
    const RailFuelParams rail;
    const PollutantDoubles rail_ef = rail_ef_per_tonmile(rail);

    PollutantDoubles baseline;  // metric tons
    baseline[Pollutant::PM25] = 120.0;
    baseline[Pollutant::SO2] = 25.0;
    baseline[Pollutant::NOx] = 6200.0;
    baseline[Pollutant::CO2] = 2.1e6;

    ShiftScenario scenario;
    scenario.distance_threshold_mi = 300.0;
    scenario.payload_tons = 20.0;

    const double eligible_tm = 1e6;

    SUBCASE("null shift changes nothing") {
        scenario.fraction_shifted = 0.0;
        const PollutantDoubles pct =
            shift_change_percent(baseline, eligible_tm, scenario, efs, rail_ef);
        for (Pollutant p : kAllPollutants) CHECK(pct[p] == 0.0);
    }

    SUBCASE("f = 0.5 is exactly ten times f = 0.05") {
        ShiftScenario lo = scenario, hi = scenario;
        lo.fraction_shifted = 0.05;
        hi.fraction_shifted = 0.5;
        const PollutantDoubles pct_lo =
            shift_change_percent(baseline, eligible_tm, lo, efs, rail_ef);
        const PollutantDoubles pct_hi =
            shift_change_percent(baseline, eligible_tm, hi, efs, rail_ef);
        for (Pollutant p : kAllPollutants) {
            CHECK(pct_hi[p] == doctest::Approx(10.0 * pct_lo[p]).epsilon(1e-12));
        }
    }

    SUBCASE("midpoint linearity residual below 1e-12") {
        auto at = [&](double f) {
            ShiftScenario s = scenario;
            s.fraction_shifted = f;
            return shift_change_percent(baseline, eligible_tm, s, efs, rail_ef);
        };
        const PollutantDoubles p1 = at(0.1), p3 = at(0.3), p5 = at(0.5);
        for (Pollutant p : kAllPollutants) {
            CHECK(std::abs(p3[p] - 0.5 * (p1[p] + p5[p])) < 1e-12);
        }
    }

    SUBCASE("synthetic fixture matches the spreadsheet oracle") {
        scenario.fraction_shifted = 0.25;
        const PollutantDoubles pct =
            shift_change_percent(baseline, eligible_tm, scenario, efs, rail_ef);
        // Direct arithmetic, one pollutant at a time.
        const double truck_miles = eligible_tm / 20.0;
        const struct {
            Pollutant p;
            double rail_g_tm;
            double truck_g_mi;
            double baseline_t;
        } rows[] = {
            {Pollutant::PM25, 3.82568 / 472.0, 0.086, 120.0},
            {Pollutant::SO2, 0.093888 / 472.0, 0.0149, 25.0},
            {Pollutant::NOx, 134.770 / 472.0, 4.585, 6200.0},
            {Pollutant::CO2, 10208.0 / 472.0, 1588.0, 2.1e6},
        };
        for (const auto& row : rows) {
            const double delta_g =
                0.25 * (eligible_tm * row.rail_g_tm - truck_miles * row.truck_g_mi);
            const double expected = 100.0 * delta_g / (row.baseline_t * 1e6);
            CHECK(pct[row.p] == doctest::Approx(expected).epsilon(1e-9));
        }
    }

    SUBCASE("direction consistency: cheaper rail pollutants decline") {
        scenario.fraction_shifted = 0.2;
        const PollutantDoubles pct =
            shift_change_percent(baseline, eligible_tm, scenario, efs, rail_ef);
        for (Pollutant p : kAllPollutants) {
            const double rail_per_tm = rail_ef[p];
            const double truck_per_tm = efs.factor(VehicleClass::Combination, p) / 20.0;
            if (rail_per_tm < truck_per_tm) {
                CHECK(pct[p] < 0.0);
            } else if (rail_per_tm > truck_per_tm) {
                CHECK(pct[p] > 0.0);
            }
        }
    }

    SUBCASE("non-positive payload is a config error") {
        scenario.payload_tons = 0.0;
        CHECK_THROWS_AS(shift_change_percent(baseline, eligible_tm, scenario, efs, rail_ef),
                        ConfigError);
    }
}

TEST_CASE("shift_sweep emits the ten-step curve") {
    const EmissionFactorSet efs = greet_factors();
    const PollutantDoubles rail_ef = rail_ef_per_tonmile(RailFuelParams{});
    PollutantDoubles baseline;
    for (Pollutant p : kAllPollutants) baseline[p] = 1000.0;

    const auto sweep = shift_sweep(baseline, 5e5, ShiftScenario{}, efs, rail_ef);
    REQUIRE(sweep.size() == 10);
    CHECK(sweep.front().fraction_shifted == doctest::Approx(0.05));
    CHECK(sweep.back().fraction_shifted == doctest::Approx(0.5));
    for (Pollutant p : kAllPollutants) {
        CHECK(sweep.back().pct_change[p] ==
              doctest::Approx(10.0 * sweep.front().pct_change[p]).epsilon(1e-12));
    }
}

TEST_CASE("load_shipments parses the CSV schema") {
    std::istringstream csv(
        "shipment_id,weight_lb,distance_mi,weighting_factor\n"
        "S1,4000,500,10\n"
        "S2,2000,100,5\n");
    // go through a temp file since the loader takes a path
    const std::string path = "test_shipments_tmp.csv";
    {
        std::ofstream out(path);
        out << csv.str();
    }
    const auto shipments = load_shipments(path);
    std::remove(path.c_str());
    REQUIRE(shipments.size() == 2);
    CHECK(shipment_tonmiles(shipments[0]) == doctest::Approx(10000.0));
    CHECK(eligible_tonmiles(shipments, 300.0) == doctest::Approx(10000.0));
}
