#pragma once

/// @file sr_ledger.hpp
/// @brief Source-receptor damage accounting: locate each dollar of
/// damage at its receptor zone and split every zone's ledger into
/// internal, exported, and imported flows.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "freight/inventory.hpp"
#include "freight/pollutant.hpp"

namespace freight {

struct SRTriplet {
    std::string source;
    std::string receptor;
    double usd_per_ton = 0.0;  // damage at receptor per ton emitted at source
};

/// Sparse per-pollutant source x receptor matrix over a zone universe.
/// Missing pairs are zero.
class SRMatrix {
public:
    SRMatrix() = default;

    /// The universe is the sorted union of the given zones and every
    /// zone mentioned in a triplet.
    SRMatrix(std::vector<std::string> zone_universe,
             std::map<Pollutant, std::vector<SRTriplet>> triplets);

    const std::vector<std::string>& zone_universe() const { return universe_; }
    bool in_universe(const std::string& zone_id) const;

    /// Receptor entries for one source, in ascending receptor order.
    std::span<const std::pair<std::string, double>> row(Pollutant p,
                                                        const std::string& source) const;

private:
    std::vector<std::string> universe_;
    // per air pollutant: source -> sorted (receptor, $/ton) pairs
    std::array<std::map<std::string, std::vector<std::pair<std::string, double>>>, 3> rows_;
};

/// Load triplets from CSV (pollutant, source_id, receptor_id, usd_per_ton).
SRMatrix load_sr_matrix(const std::string& path);

struct DamageFlow {
    std::string source;
    std::string receptor;
    double usd = 0.0;  // $/yr
};

/// Flows per pollutant: d(p,s,r) = E(s,p) x SR(p,s,r), sources in sorted
/// order.  An emitting zone absent from the matrix universe is fatal.
using DamageFlows = std::map<Pollutant, std::vector<DamageFlow>>;

DamageFlows receptor_damages(const EmissionsLedger& ledger, const SRMatrix& sr);

struct ZoneFlowEntry {
    // Pollutant-summed headline values, $/yr.
    double internal = 0.0;
    double exported = 0.0;
    double imported = 0.0;
    // Per-pollutant breakdown (CO2 slot unused).
    PollutantDoubles internal_p;
    PollutantDoubles exported_p;
    PollutantDoubles imported_p;

    double source_total() const { return internal + exported; }
    double receptor_total() const { return internal + imported; }
    bool has_flows() const { return internal != 0.0 || exported != 0.0 || imported != 0.0; }
};

struct Classification {
    bool net_importer = false;
    /// exported / imported.  +infinity for a pure exporter; NaN when the
    /// zone has no flows at all (excluded from ratio reports).
    double ratio = 0.0;
};

/// Importer status on the pollutant-summed ledger; per-pollutant flags
/// come from classify_pollutant.
Classification classify_and_ratio(const ZoneFlowEntry& entry);
Classification classify_pollutant(const ZoneFlowEntry& entry, Pollutant p);

class SrLedger {
public:
    SrLedger() = default;
    explicit SrLedger(std::map<std::string, ZoneFlowEntry> entries);

    const std::map<std::string, ZoneFlowEntry>& entries() const { return entries_; }
    const ZoneFlowEntry& zone(const std::string& zone_id) const;

    double total_source() const;    // sum of source totals
    double total_receptor() const;  // sum of receptor totals
    double total_exported() const;
    double total_imported() const;

private:
    std::map<std::string, ZoneFlowEntry> entries_;
};

/// internal(z) = d(z,z); exported(z) = sum over r != z; imported(z) = sum
/// over s != z.  Every universe zone gets an entry (zeros when untouched).
SrLedger decompose(const DamageFlows& flows, const SRMatrix& sr);

}  // namespace freight
