#include "freight/pollutant.hpp"

#include "freight/errors.hpp"

namespace freight {

std::string_view to_string(Pollutant p) {
    switch (p) {
        case Pollutant::PM25: return "PM2.5";
        case Pollutant::SO2: return "SO2";
        case Pollutant::NOx: return "NOx";
        case Pollutant::CO2: return "CO2";
    }
    throw Error("unknown pollutant enum value");
}

Pollutant parse_pollutant(std::string_view name) {
    if (name == "PM2.5" || name == "PM25") return Pollutant::PM25;
    if (name == "SO2") return Pollutant::SO2;
    if (name == "NOx" || name == "NOX") return Pollutant::NOx;
    if (name == "CO2") return Pollutant::CO2;
    throw ConfigError("unknown pollutant name: " + std::string(name));
}

std::string_view to_string(VehicleClass c) {
    switch (c) {
        case VehicleClass::Combination: return "combination";
        case VehicleClass::SingleUnit: return "single_unit";
    }
    throw Error("unknown vehicle class enum value");
}

VehicleClass parse_vehicle_class(std::string_view name) {
    if (name == "combination") return VehicleClass::Combination;
    if (name == "single_unit") return VehicleClass::SingleUnit;
    throw ConfigError("unknown vehicle class name: " + std::string(name));
}

}  // namespace freight
