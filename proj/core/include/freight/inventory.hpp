#pragma once

/// @file inventory.hpp
/// @brief Per-link emissions and zone-level aggregation.
///
/// Masses are metric tons (grams / 1e6) throughout; the conversion lives
/// in kGramsPerMetricTon and nowhere else.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freight/network.hpp"
#include "freight/pollutant.hpp"
#include "freight/zones.hpp"

namespace freight {

/// Named g/mile table over (vehicle class x pollutant).
class EmissionFactorSet {
public:
    EmissionFactorSet() = default;

    /// All eight entries must be present and non-negative.
    EmissionFactorSet(std::string name,
                      const std::map<std::pair<VehicleClass, Pollutant>, double>& factors);

    const std::string& name() const { return name_; }
    double factor(VehicleClass cls, Pollutant p) const;

private:
    std::string name_;
    std::array<PollutantDoubles, 2> factors_{};
};

/// Load factor sets keyed by name from a JSON config file:
///   {"greet": {"combination": {"PM2.5": 0.086, ...}, "single_unit": {...}}, ...}
std::map<std::string, EmissionFactorSet> load_emission_factor_sets(const std::string& path);

/// Emissions of one link in grams/year:
/// combination VMT x EF(combination) + single-unit VMT x EF(single_unit).
PollutantDoubles link_emissions(const AnnualVmt& vmt, const EmissionFactorSet& efs);

struct ZoneAssignment {
    /// Parallel to the input links; nullopt when the centroid lies in no zone.
    std::vector<std::optional<std::string>> zone_of_link;
    std::size_t unassigned = 0;
};

/// Locate each link's centroid in a zone.  A centroid on a shared
/// boundary goes to the zone with the lexicographically smallest id.
/// The lookup parallelizes across links; output is worker-count invariant.
ZoneAssignment assign_links_to_zones(std::span<const RoadLink> links, const ZoneRegistry& zones,
                                     unsigned workers = 1);

class EmissionsLedger {
public:
    EmissionsLedger() = default;
    EmissionsLedger(ZoneKind kind, std::string factor_set_name,
                    std::map<std::string, PollutantDoubles> tons);

    ZoneKind zone_kind() const { return kind_; }
    const std::string& factor_set_name() const { return factor_set_name_; }

    /// Tons per zone, keyed by zone id (sorted iteration order).
    const std::map<std::string, PollutantDoubles>& entries() const { return tons_; }

    bool has_zone(const std::string& zone_id) const { return tons_.count(zone_id) > 0; }
    const PollutantDoubles& zone_tons(const std::string& zone_id) const;

    /// National total per pollutant, accumulated in sorted zone order.
    PollutantDoubles totals() const;

private:
    ZoneKind kind_ = ZoneKind::County;
    std::string factor_set_name_;
    std::map<std::string, PollutantDoubles> tons_;
};

/// Sum link emissions into zones (grams -> metric tons).  Every zone in
/// the registry appears in the ledger, empty zones with zeros.  Links
/// without an assignment are skipped; their count is reported via the
/// assignment.  Accumulation is ordered by (zone id, link input index),
/// so results are bit-identical regardless of input permutation.
EmissionsLedger aggregate_zone_emissions(std::span<const RoadLink> links,
                                         std::span<const AnnualVmt> vmt,
                                         const ZoneAssignment& assignment,
                                         const ZoneRegistry& zones,
                                         const EmissionFactorSet& efs);

/// One row of an NEI-style emissions table.
struct NeiRow {
    std::string scc_level3;  // vehicle category label
    Pollutant pollutant = Pollutant::PM25;
    double tons = 0.0;
};

struct NeiFilterResult {
    std::vector<NeiRow> kept;
    std::size_t dropped = 0;  // known labels outside the four freight categories
    std::size_t unknown = 0;  // labels not in the SCC level-three list
};

/// Keep only the four heavy-duty freight truck categories; every other
/// row is dropped, and labels outside the known SCC list are counted
/// separately.  Matching is case-insensitive on the trimmed label.
NeiFilterResult nei_truck_filter(std::span<const NeiRow> rows);

}  // namespace freight
