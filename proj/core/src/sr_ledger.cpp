#include "freight/sr_ledger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "freight/csv.hpp"
#include "freight/errors.hpp"

namespace freight {

namespace {

std::size_t air_index(Pollutant p) {
    if (p == Pollutant::CO2) throw DataError("CO2 has no source-receptor matrix");
    return static_cast<std::size_t>(p);
}

}  // namespace

SRMatrix::SRMatrix(std::vector<std::string> zone_universe,
                   std::map<Pollutant, std::vector<SRTriplet>> triplets) {
    std::set<std::string> universe(zone_universe.begin(), zone_universe.end());
    for (const auto& [p, list] : triplets) {
        for (const auto& t : list) {
            if (t.usd_per_ton < 0.0) {
                throw DataError("negative source-receptor entry for " + t.source + " -> " +
                                t.receptor);
            }
            universe.insert(t.source);
            universe.insert(t.receptor);
        }
    }
    universe_.assign(universe.begin(), universe.end());

    for (const auto& [p, list] : triplets) {
        auto& rows = rows_[air_index(p)];
        for (const auto& t : list) {
            rows[t.source].emplace_back(t.receptor, t.usd_per_ton);
        }
        for (auto& [_, receptors] : rows) {
            std::sort(receptors.begin(), receptors.end());
        }
    }
}

bool SRMatrix::in_universe(const std::string& zone_id) const {
    return std::binary_search(universe_.begin(), universe_.end(), zone_id);
}

std::span<const std::pair<std::string, double>> SRMatrix::row(Pollutant p,
                                                              const std::string& source) const {
    const auto& rows = rows_[air_index(p)];
    const auto it = rows.find(source);
    if (it == rows.end()) return {};
    return it->second;
}

SRMatrix load_sr_matrix(const std::string& path) {
    const CsvTable table = read_csv(path);
    const std::size_t c_pol = table.column("pollutant");
    const std::size_t c_src = table.column("source_id");
    const std::size_t c_rcp = table.column("receptor_id");
    const std::size_t c_usd = table.column("usd_per_ton");

    std::map<Pollutant, std::vector<SRTriplet>> triplets;
    for (const auto& row : table.rows) {
        const Pollutant p = parse_pollutant(row.at(c_pol));
        const auto usd = parse_double(row.at(c_usd));
        if (!usd) throw ConfigError("malformed source-receptor row in " + path);
        triplets[p].push_back(SRTriplet{row.at(c_src), row.at(c_rcp), *usd});
    }
    return SRMatrix({}, std::move(triplets));
}

DamageFlows receptor_damages(const EmissionsLedger& ledger, const SRMatrix& sr) {
    for (const auto& [zone_id, tons] : ledger.entries()) {
        bool emits = false;
        for (Pollutant p : kAirPollutants) emits = emits || tons[p] > 0.0;
        if (emits && !sr.in_universe(zone_id)) {
            throw DataError("emitting zone absent from source-receptor matrix: " + zone_id);
        }
    }

    DamageFlows flows;
    for (Pollutant p : kAirPollutants) {
        auto& list = flows[p];
        for (const auto& [source, tons] : ledger.entries()) {
            const double emitted = tons[p];
            if (emitted == 0.0) continue;
            for (const auto& [receptor, usd_per_ton] : sr.row(p, source)) {
                list.push_back(DamageFlow{source, receptor, emitted * usd_per_ton});
            }
        }
    }
    return flows;
}

SrLedger::SrLedger(std::map<std::string, ZoneFlowEntry> entries) : entries_(std::move(entries)) {}

const ZoneFlowEntry& SrLedger::zone(const std::string& zone_id) const {
    const auto it = entries_.find(zone_id);
    if (it == entries_.end()) throw DataError("zone not in source-receptor ledger: " + zone_id);
    return it->second;
}

double SrLedger::total_source() const {
    double total = 0.0;
    for (const auto& [_, e] : entries_) total += e.source_total();
    return total;
}

double SrLedger::total_receptor() const {
    double total = 0.0;
    for (const auto& [_, e] : entries_) total += e.receptor_total();
    return total;
}

double SrLedger::total_exported() const {
    double total = 0.0;
    for (const auto& [_, e] : entries_) total += e.exported;
    return total;
}

double SrLedger::total_imported() const {
    double total = 0.0;
    for (const auto& [_, e] : entries_) total += e.imported;
    return total;
}

SrLedger decompose(const DamageFlows& flows, const SRMatrix& sr) {
    std::map<std::string, ZoneFlowEntry> entries;
    for (const auto& zone : sr.zone_universe()) entries[zone];

    for (const auto& [p, list] : flows) {
        for (const auto& flow : list) {
            if (flow.source == flow.receptor) {
                auto& e = entries[flow.source];
                e.internal += flow.usd;
                e.internal_p[p] += flow.usd;
            } else {
                auto& src = entries[flow.source];
                src.exported += flow.usd;
                src.exported_p[p] += flow.usd;
                auto& rcp = entries[flow.receptor];
                rcp.imported += flow.usd;
                rcp.imported_p[p] += flow.usd;
            }
        }
    }
    return SrLedger(std::move(entries));
}

namespace {

Classification classify(double exported, double imported, bool any_flows) {
    Classification c;
    c.net_importer = imported > exported;
    if (!any_flows) {
        c.ratio = std::numeric_limits<double>::quiet_NaN();
    } else if (imported == 0.0) {
        c.ratio = exported > 0.0 ? std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::quiet_NaN();
    } else {
        c.ratio = exported / imported;
    }
    return c;
}

}  // namespace

Classification classify_and_ratio(const ZoneFlowEntry& entry) {
    return classify(entry.exported, entry.imported, entry.has_flows());
}

Classification classify_pollutant(const ZoneFlowEntry& entry, Pollutant p) {
    const bool any = entry.internal_p[p] != 0.0 || entry.exported_p[p] != 0.0 ||
                     entry.imported_p[p] != 0.0;
    return classify(entry.exported_p[p], entry.imported_p[p], any);
}

}  // namespace freight
