#include "freight/network.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include "freight/csv.hpp"
#include "freight/errors.hpp"

namespace freight {

std::string_view to_string(RouteType t) {
    switch (t) {
        case RouteType::Interstate: return "interstate";
        case RouteType::FreewayExpressway: return "freeway_expressway";
        case RouteType::OtherPrincipalArterial: return "other_principal_arterial";
        case RouteType::MinorArterial: return "minor_arterial";
        case RouteType::MajorCollector: return "major_collector";
        case RouteType::MinorCollector: return "minor_collector";
    }
    throw Error("unknown route type enum value");
}

RouteType parse_route_type(std::string_view name) {
    if (name == "interstate") return RouteType::Interstate;
    if (name == "freeway_expressway") return RouteType::FreewayExpressway;
    if (name == "other_principal_arterial") return RouteType::OtherPrincipalArterial;
    if (name == "minor_arterial") return RouteType::MinorArterial;
    if (name == "major_collector") return RouteType::MajorCollector;
    if (name == "minor_collector") return RouteType::MinorCollector;
    throw ConfigError("unknown route type: " + std::string(name));
}

void VmtParams::validate() const {
    if (!(diesel_fraction >= 0.0 && diesel_fraction <= 1.0)) {
        throw ConfigError("diesel_fraction must lie in [0,1]");
    }
    if (!(truck_fraction >= 0.0 && truck_fraction <= 1.0)) {
        throw ConfigError("truck_fraction must lie in [0,1]");
    }
    if (target_year < base_year) throw ConfigError("target_year must be >= base_year");
    if (!(days_per_year > 0.0)) throw ConfigError("days_per_year must be positive");
}

namespace {

// Returns the rejection reason, or nullopt and fills `link` on success.
std::optional<std::string> parse_link_row(const std::vector<std::string>& cells,
                                          const std::vector<std::size_t>& cols, RoadLink& link) {
    if (cells.size() < cols.size()) return "parse";

    link.link_id = cells[cols[0]];
    if (link.link_id.empty()) return "parse";

    const auto mp_start = parse_double(cells[cols[1]]);
    const auto mp_end = parse_double(cells[cols[2]]);
    const auto adtt_long = parse_double(cells[cols[3]]);
    const auto adtt_nonlong = parse_double(cells[cols[4]]);
    const auto cx = parse_double(cells[cols[6]]);
    const auto cy = parse_double(cells[cols[7]]);
    if (!mp_start || !mp_end || !adtt_long || !adtt_nonlong || !cx || !cy) return "parse";

    try {
        link.route_type = parse_route_type(cells[cols[5]]);
    } catch (const ConfigError&) {
        return "parse";
    }

    link.milepost_start = *mp_start;
    link.milepost_end = *mp_end;
    link.adtt_longhaul = *adtt_long;
    link.adtt_nonlonghaul = *adtt_nonlong;
    link.centroid = Point{*cx, *cy};
    link.county_id = cells[cols[8]];

    if (link.adtt_longhaul < 0.0 || link.adtt_nonlonghaul < 0.0) return "negative-adtt";
    if (!(link.length_miles() > 0.0)) return "negative-or-zero length";
    return std::nullopt;
}

}  // namespace

LoadResult load_links(std::istream& in) {
    LoadResult result;
    std::string line;
    std::size_t line_number = 0;
    std::vector<std::size_t> cols;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cols.empty()) {
            CsvTable header_only{cells, {}};
            for (const char* name : {"link_id", "mp_start", "mp_end", "adtt_long", "adtt_nonlong",
                                     "route_type", "centroid_x", "centroid_y", "county_id"}) {
                cols.push_back(header_only.column(name));
            }
            continue;
        }
        RoadLink link;
        if (auto reason = parse_link_row(cells, cols, link)) {
            result.rejected.push_back({line_number, std::string(trim(line)), *reason});
        } else {
            result.accepted.push_back(std::move(link));
        }
    }
    if (cols.empty()) throw ConfigError("links file has no header");
    return result;
}

LoadResult load_links(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("links file not found: " + path);
    return load_links(in);
}

DailyCounts daily_mhdv(const RoadLink& link, const VmtParams& params) {
    // Eq form: ADTT x DF x TF.  The truck fraction is applied
    // multiplicatively (x0.99), which equals subtracting 1% of counts.
    const double scale = params.diesel_fraction * params.truck_fraction;
    return DailyCounts{link.adtt_longhaul * scale, link.adtt_nonlonghaul * scale};
}

double growth_factor(const VmtParams& params) {
    return std::pow(1.0 + params.cagr, static_cast<double>(params.target_year - params.base_year));
}

AnnualVmt annual_vmt(const RoadLink& link, const VmtParams& params) {
    const DailyCounts daily = daily_mhdv(link, params);
    const double miles_per_count = link.length_miles() * params.days_per_year * growth_factor(params);
    return AnnualVmt{daily.combination * miles_per_count, daily.single_unit * miles_per_count};
}

}  // namespace freight
