#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "morphwing/config.hpp"

namespace morphwing {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
    std::string command;  // solve|classify|sweep|calibrate|synthesize|states|report
    std::optional<double> phase_deg;     // solve
    std::optional<std::uint64_t> seed;   // synthesize override
    std::optional<std::string> out_dir;  // overrides output.directory
};

struct ManifestEntry {
    std::string path;    // relative to the output directory
    std::string status;  // "complete" | "incomplete"
};

struct RunManifest {
    std::string tool_version;
    std::string config_hash;
    std::string command;
    std::string started_at;   // ISO 8601 UTC; only the manifest carries time
    std::string finished_at;
    std::vector<ManifestEntry> outputs;
    std::optional<std::string> error;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

// Executes one command against a validated config, writing all artifacts and
// manifest.json into the output directory. Data files are byte-reproducible
// for identical configs; the manifest is always written, error or not, and
// names every file the run produced.
RunManifest run_command(const RunOptions& options, const ProjectConfig& config);

}  // namespace morphwing
