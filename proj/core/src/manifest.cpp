#include "freight/manifest.hpp"

#include <filesystem>

#include <json.hpp>

#include "freight/csv.hpp"

namespace freight {

std::string RunManifest::to_json() const {
    nlohmann::json doc;
    doc["command"] = command;
    doc["config_hash"] = config_hash;
    doc["engine_version"] = engine_version;
    doc["inputs"] = inputs;
    doc["counts"] = counts;
    doc["parameters"] = parameters;
    doc["wall_time_seconds"] = wall_time_seconds;
    return doc.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::string& out_dir) {
    const auto path = std::filesystem::path(out_dir) / "run_manifest.json";
    atomic_write_file(path.string(), manifest.to_json());
}

}  // namespace freight
