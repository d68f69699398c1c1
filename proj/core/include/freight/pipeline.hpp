#pragma once

/// @file pipeline.hpp
/// @brief Batch orchestration of the pipeline stages.
///
/// Stages run sequentially; stage-internal work is parallelized across
/// the configured worker count.  Outputs are written atomically and are
/// byte-identical across reruns and worker counts; every run also writes
/// a run_manifest.json.

#include <optional>
#include <string>
#include <vector>

#include "freight/config.hpp"
#include "freight/manifest.hpp"

namespace freight {

struct RunOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<unsigned> workers_override;
    bool quiet = false;  // suppress progress lines (stages still report errors by throwing)
};

inline const std::vector<std::string>& pipeline_commands() {
    static const std::vector<std::string> cmds = {"build-inventory", "damages", "sr-ledger",
                                                  "ej-regress", "modal-shift", "all"};
    return cmds;
}

/// Execute one subcommand (or "all") and return the manifest that was
/// written to `<out_dir>/run_manifest.json`.
RunManifest run_command(const std::string& command, const RunOptions& options);

}  // namespace freight
