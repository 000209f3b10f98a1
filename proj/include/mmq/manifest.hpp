#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mmq {

inline constexpr const char* kVersion = "0.1.0";

// Record of one CLI run: the command, the fully resolved configuration
// (defaults materialized, flag overrides applied) and every file written.
// Contains nothing volatile, so a rerun of a deterministic command produces
// a bit-identical manifest.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json resolved_config;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::vector<std::string> outputs;
};

nlohmann::json manifest_to_json(const RunManifest& m);
void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace mmq
