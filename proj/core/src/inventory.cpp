#include "freight/inventory.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "freight/csv.hpp"
#include "freight/errors.hpp"
#include "freight/parallel.hpp"

namespace freight {

EmissionFactorSet::EmissionFactorSet(
    std::string name, const std::map<std::pair<VehicleClass, Pollutant>, double>& factors)
    : name_(std::move(name)) {
    for (VehicleClass cls : {VehicleClass::Combination, VehicleClass::SingleUnit}) {
        for (Pollutant p : kAllPollutants) {
            const auto it = factors.find({cls, p});
            if (it == factors.end()) {
                throw ConfigError("emission factor set '" + name_ + "' is missing " +
                                  std::string(to_string(cls)) + "/" + std::string(to_string(p)));
            }
            if (it->second < 0.0) {
                throw ConfigError("emission factor set '" + name_ + "' has a negative factor");
            }
            factors_[static_cast<std::size_t>(cls)][p] = it->second;
        }
    }
}

double EmissionFactorSet::factor(VehicleClass cls, Pollutant p) const {
    return factors_[static_cast<std::size_t>(cls)][p];
}

std::map<std::string, EmissionFactorSet> load_emission_factor_sets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("emission factors file not found: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed emission factors JSON in " + path + ": " + e.what());
    }

    std::map<std::string, EmissionFactorSet> sets;
    try {
        for (const auto& [set_name, classes] : doc.items()) {
            std::map<std::pair<VehicleClass, Pollutant>, double> factors;
            for (const auto& [class_name, table] : classes.items()) {
                const VehicleClass cls = parse_vehicle_class(class_name);
                for (const auto& [pol_name, value] : table.items()) {
                    factors[{cls, parse_pollutant(pol_name)}] = value.get<double>();
                }
            }
            sets.emplace(set_name, EmissionFactorSet(set_name, factors));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed emission factors JSON in " + path + ": " + e.what());
    }
    return sets;
}

PollutantDoubles link_emissions(const AnnualVmt& vmt, const EmissionFactorSet& efs) {
    PollutantDoubles grams;
    for (Pollutant p : kAllPollutants) {
        grams[p] = vmt.combination_mi * efs.factor(VehicleClass::Combination, p) +
                   vmt.single_unit_mi * efs.factor(VehicleClass::SingleUnit, p);
    }
    return grams;
}

ZoneAssignment assign_links_to_zones(std::span<const RoadLink> links, const ZoneRegistry& zones,
                                     unsigned workers) {
    ZoneAssignment result;
    result.zone_of_link.resize(links.size());
    parallel_for(links.size(), workers, [&](std::size_t i) {
        const auto hits = zones.zones_containing(links[i].centroid);
        if (!hits.empty()) {
            result.zone_of_link[i] = hits.front();  // smallest id wins boundary ties
        }
    });
    for (const auto& zone : result.zone_of_link) {
        if (!zone) ++result.unassigned;
    }
    return result;
}

EmissionsLedger::EmissionsLedger(ZoneKind kind, std::string factor_set_name,
                                 std::map<std::string, PollutantDoubles> tons)
    : kind_(kind), factor_set_name_(std::move(factor_set_name)), tons_(std::move(tons)) {
    for (const auto& [zone, values] : tons_) {
        for (Pollutant p : kAllPollutants) {
            if (values[p] < 0.0) throw DataError("negative emissions for zone " + zone);
        }
    }
}

const PollutantDoubles& EmissionsLedger::zone_tons(const std::string& zone_id) const {
    const auto it = tons_.find(zone_id);
    if (it == tons_.end()) throw DataError("zone not in emissions ledger: " + zone_id);
    return it->second;
}

PollutantDoubles EmissionsLedger::totals() const {
    PollutantDoubles total;
    for (const auto& [_, values] : tons_) total += values;
    return total;
}

EmissionsLedger aggregate_zone_emissions(std::span<const RoadLink> links,
                                         std::span<const AnnualVmt> vmt,
                                         const ZoneAssignment& assignment,
                                         const ZoneRegistry& zones,
                                         const EmissionFactorSet& efs) {
    if (links.size() != vmt.size() || links.size() != assignment.zone_of_link.size()) {
        throw DataError("links, VMT, and assignment must be the same length");
    }

    // Group link indices by zone, then order each group by link id so the
    // accumulation order (and hence the floating-point result) is fixed
    // under any permutation of the input.
    std::map<std::string, std::vector<std::size_t>> by_zone;
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (assignment.zone_of_link[i]) by_zone[*assignment.zone_of_link[i]].push_back(i);
    }
    for (auto& [_, indices] : by_zone) {
        std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
            return links[a].link_id < links[b].link_id;
        });
    }

    std::map<std::string, PollutantDoubles> tons;
    for (const auto& zone_id : zones.zone_ids()) tons[zone_id];  // empty zones stay at zero
    for (const auto& [zone_id, indices] : by_zone) {
        PollutantDoubles grams;
        for (std::size_t i : indices) grams += link_emissions(vmt[i], efs);
        PollutantDoubles& entry = tons[zone_id];
        for (Pollutant p : kAllPollutants) entry[p] = grams[p] / kGramsPerMetricTon;
    }
    return EmissionsLedger(zones.kind(), efs.name(), std::move(tons));
}

namespace {

std::string normalize_label(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    for (char c : trim(label)) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

NeiFilterResult nei_truck_filter(std::span<const NeiRow> rows) {
    // The four categories relevant to heavy-duty freight trucking.
    static const std::array<std::string_view, 4> kKept = {
        "single unit short-haul truck",
        "single unit long-haul truck",
        "combination short-haul truck",
        "combination long-haul truck",
    };
    // The remaining SCC level-three diesel vehicle categories.
    static const std::array<std::string_view, 12> kKnownDropped = {
        "passenger truck",
        "light commercial truck",
        "refuse truck",
        "truck",
        "tank cars and trucks",
        "automobiles/truck assembly operations",
        "automobiles and light trucks",
        "tank truck cleaning",
        "intercity bus",
        "transit bus",
        "school bus",
        "motor home",
    };

    NeiFilterResult result;
    for (const auto& row : rows) {
        const std::string label = normalize_label(row.scc_level3);
        if (std::find(kKept.begin(), kKept.end(), label) != kKept.end()) {
            result.kept.push_back(row);
        } else if (std::find(kKnownDropped.begin(), kKnownDropped.end(), label) !=
                   kKnownDropped.end()) {
            ++result.dropped;
        } else {
            ++result.dropped;
            ++result.unknown;
        }
    }
    return result;
}

}  // namespace freight
