#include "freight/zones.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "freight/errors.hpp"

namespace freight {

std::string_view to_string(ZoneKind k) {
    return k == ZoneKind::County ? "county" : "tract";
}

ZoneKind parse_zone_kind(std::string_view name) {
    if (name == "county") return ZoneKind::County;
    if (name == "tract") return ZoneKind::Tract;
    throw ConfigError("unknown zone kind: " + std::string(name));
}

ZoneRegistry::ZoneRegistry(ZoneKind kind, std::vector<ZonePart> parts,
                           std::map<std::string, std::string> parents)
    : kind_(kind), parts_(std::move(parts)), parents_(std::move(parents)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        parts_of_[parts_[i].zone_id].push_back(i);
    }
    ids_.reserve(parts_of_.size());
    for (const auto& [id, _] : parts_of_) ids_.push_back(id);
}

bool ZoneRegistry::contains(const std::string& zone_id) const {
    return parts_of_.count(zone_id) > 0;
}

std::vector<Polygon> ZoneRegistry::zone_polygons(const std::string& zone_id) const {
    const auto it = parts_of_.find(zone_id);
    if (it == parts_of_.end()) throw DataError("unknown zone id: " + zone_id);
    std::vector<Polygon> polys;
    polys.reserve(it->second.size());
    for (std::size_t i : it->second) polys.push_back(parts_[i].polygon);
    return polys;
}

double ZoneRegistry::zone_area(const std::string& zone_id) const {
    const auto it = parts_of_.find(zone_id);
    if (it == parts_of_.end()) throw DataError("unknown zone id: " + zone_id);
    double area = 0.0;
    for (std::size_t i : it->second) area += polygon_area(parts_[i].polygon);
    return area;
}

std::optional<std::string> ZoneRegistry::parent_of(const std::string& zone_id) const {
    const auto it = parents_.find(zone_id);
    if (it == parents_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> ZoneRegistry::zones_containing(const Point& p) const {
    std::vector<std::string> hits;
    for (const auto& [id, indices] : parts_of_) {
        for (std::size_t i : indices) {
            if (point_in_polygon(p, parts_[i].polygon)) {
                hits.push_back(id);
                break;
            }
        }
    }
    return hits;  // map iteration is already id-sorted
}

ZoneRegistry load_zones(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("zones file not found: " + path);

    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed zones JSON in " + path + ": " + e.what());
    }

    try {
        const ZoneKind kind = parse_zone_kind(doc.at("kind").get<std::string>());
        std::vector<ZonePart> parts;
        std::map<std::string, std::string> parents;
        for (const auto& record : doc.at("zones")) {
            ZonePart part;
            part.zone_id = record.at("id").get<std::string>();
            std::vector<Ring> rings;
            for (const auto& ring_json : record.at("rings")) {
                Ring ring;
                for (const auto& pt : ring_json) {
                    ring.push_back(Point{pt.at(0).get<double>(), pt.at(1).get<double>()});
                }
                rings.push_back(std::move(ring));
            }
            part.polygon = Polygon(std::move(rings));
            if (record.contains("parent")) {
                parents[part.zone_id] = record.at("parent").get<std::string>();
            }
            parts.push_back(std::move(part));
        }
        return ZoneRegistry(kind, std::move(parts), std::move(parents));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed zones JSON in " + path + ": " + e.what());
    }
}

}  // namespace freight
