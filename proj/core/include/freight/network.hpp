#pragma once

/// @file network.hpp
/// @brief Road-link ingestion and annual truck VMT.
///
/// Each link carries separate long-haul and non-long-haul daily truck
/// counts.  Long-haul counts map to combination trucks (class 8b+),
/// non-long-haul to single-unit trucks (class 6); the two channels are
/// carried through the whole pipeline.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "freight/geometry.hpp"

namespace freight {

enum class RouteType {
    Interstate,
    FreewayExpressway,
    OtherPrincipalArterial,
    MinorArterial,
    MajorCollector,
    MinorCollector,
};

std::string_view to_string(RouteType t);
RouteType parse_route_type(std::string_view name);

struct RoadLink {
    std::string link_id;
    double milepost_start = 0.0;
    double milepost_end = 0.0;
    double adtt_longhaul = 0.0;     // vehicles/day
    double adtt_nonlonghaul = 0.0;  // vehicles/day
    RouteType route_type = RouteType::Interstate;
    Point centroid;
    std::string county_id;  // optional; derivable from geometry

    double length_miles() const { return milepost_end - milepost_start; }
};

struct VmtParams {
    double diesel_fraction = 0.98;  // share of trucks that are diesel
    double truck_fraction = 0.99;   // removes buses and other non-cargo vehicles
    double cagr = 0.02;             // annual VMT growth rate
    int base_year = 2012;
    int target_year = 2017;
    double days_per_year = 365.0;

    /// Throws ConfigError when fractions leave [0,1] or the year span is negative.
    void validate() const;
};

struct RejectedRecord {
    std::size_t line_number = 0;  // 1-based, header included
    std::string raw;
    std::string reason;
};

struct LoadResult {
    std::vector<RoadLink> accepted;
    std::vector<RejectedRecord> rejected;
};

inline constexpr const char* kLinksCsvHeader =
    "link_id,mp_start,mp_end,adtt_long,adtt_nonlong,route_type,centroid_x,centroid_y,county_id";

/// Parse links from CSV (header above).  Rows that fail to parse are
/// rejected with reason "parse"; rows whose milepost difference is not
/// positive are rejected with reason "negative-or-zero length"; negative
/// truck counts are rejected with reason "negative-adtt".  Input order is
/// preserved in both lists.  An unreadable file throws ConfigError.
LoadResult load_links(const std::string& path);
LoadResult load_links(std::istream& in);

struct DailyCounts {
    double combination = 0.0;
    double single_unit = 0.0;

    double total() const { return combination + single_unit; }
};

/// Daily adjusted truck count per class: ADTT x diesel fraction x truck fraction.
DailyCounts daily_mhdv(const RoadLink& link, const VmtParams& params);

/// (1 + cagr)^(target_year - base_year)
double growth_factor(const VmtParams& params);

struct AnnualVmt {
    double combination_mi = 0.0;  // miles/year
    double single_unit_mi = 0.0;  // miles/year

    double total() const { return combination_mi + single_unit_mi; }
};

/// Per class: daily count x link length x days/year x growth factor.
AnnualVmt annual_vmt(const RoadLink& link, const VmtParams& params);

}  // namespace freight
