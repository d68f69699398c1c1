#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace freight {

enum class Pollutant : std::size_t {
    PM25 = 0,
    SO2 = 1,
    NOx = 2,
    CO2 = 3,
};

inline constexpr std::array<Pollutant, 4> kAllPollutants = {
    Pollutant::PM25, Pollutant::SO2, Pollutant::NOx, Pollutant::CO2};

/// Species valued through the marginal-social-cost grid and the S-R
/// matrix; CO2 is valued separately through the social cost of carbon.
inline constexpr std::array<Pollutant, 3> kAirPollutants = {
    Pollutant::PM25, Pollutant::SO2, Pollutant::NOx};

std::string_view to_string(Pollutant p);
Pollutant parse_pollutant(std::string_view name);

enum class VehicleClass : std::size_t {
    Combination = 0,  // long-haul tractor-trailer, class 8b+
    SingleUnit = 1,   // non-long-haul, class 6
};

std::string_view to_string(VehicleClass c);
VehicleClass parse_vehicle_class(std::string_view name);

/// Fixed-size map keyed by pollutant.  Value-semantic, zero-initialized.
template <typename T>
struct PollutantMap {
    std::array<T, 4> values{};

    T& operator[](Pollutant p) { return values[static_cast<std::size_t>(p)]; }
    const T& operator[](Pollutant p) const { return values[static_cast<std::size_t>(p)]; }

    PollutantMap& operator+=(const PollutantMap& other) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
        return *this;
    }
};

using PollutantDoubles = PollutantMap<double>;

// grams -> metric tons
inline constexpr double kGramsPerMetricTon = 1e6;

}  // namespace freight
