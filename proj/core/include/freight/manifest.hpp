#pragma once

/// @file manifest.hpp
/// @brief Per-run provenance record: config hash, input digests, counts.
///
/// Two runs over identical inputs produce manifests identical in every
/// field except wall_time_seconds.

#include <cstdint>
#include <map>
#include <string>

namespace freight {

struct RunManifest {
    std::string command;
    std::string config_hash;                      // digest of the config file bytes
    std::map<std::string, std::string> inputs;    // path -> content digest
    std::map<std::string, std::int64_t> counts;   // links accepted/rejected, zones, drops
    std::map<std::string, double> parameters;     // derived scalars (VSL factor, ...)
    std::string engine_version;
    double wall_time_seconds = 0.0;

    std::string to_json() const;
};

/// Serialize and atomically write `<out_dir>/run_manifest.json`.
void write_manifest(const RunManifest& manifest, const std::string& out_dir);

}  // namespace freight
