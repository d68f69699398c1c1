#pragma once

/// @file zones.hpp
/// @brief Zone registry: counties or census tracts as polygon sets.
///
/// A zone may consist of several disjoint polygon parts (islands); parts
/// share the zone id and their areas are summed.  Geometry is read from
/// a JSON file documented in the README:
///
///   {
///     "kind": "county",
///     "zones": [
///       {"id": "C01", "rings": [[[x,y], ...], ...]},
///       {"id": "C01", "rings": ...},              // second part, same id
///       {"id": "C01-T1", "parent": "C01", ...}    // tracts carry a parent
///     ]
///   }

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freight/geometry.hpp"

namespace freight {

enum class ZoneKind { County, Tract };

std::string_view to_string(ZoneKind k);
ZoneKind parse_zone_kind(std::string_view name);

struct ZonePart {
    std::string zone_id;
    Polygon polygon;
};

class ZoneRegistry {
public:
    ZoneRegistry() = default;
    ZoneRegistry(ZoneKind kind, std::vector<ZonePart> parts,
                 std::map<std::string, std::string> parents = {});

    ZoneKind kind() const { return kind_; }
    const std::vector<ZonePart>& parts() const { return parts_; }

    /// Sorted unique zone ids.
    const std::vector<std::string>& zone_ids() const { return ids_; }
    bool contains(const std::string& zone_id) const;
    std::size_t size() const { return ids_.size(); }

    /// Polygon parts of one zone.
    std::vector<Polygon> zone_polygons(const std::string& zone_id) const;

    /// Sum of part areas.
    double zone_area(const std::string& zone_id) const;

    /// Parent zone id (a tract's county), when recorded.
    std::optional<std::string> parent_of(const std::string& zone_id) const;

    /// Zones containing the point, edge-inclusive, in ascending id order.
    std::vector<std::string> zones_containing(const Point& p) const;

private:
    ZoneKind kind_ = ZoneKind::County;
    std::vector<ZonePart> parts_;
    std::vector<std::string> ids_;
    std::map<std::string, std::vector<std::size_t>> parts_of_;
    std::map<std::string, std::string> parents_;
};

/// Load a registry from the JSON geometry format.
/// Throws ConfigError on unreadable/malformed files and GeometryError on
/// invalid rings.
ZoneRegistry load_zones(const std::string& path);

}  // namespace freight
